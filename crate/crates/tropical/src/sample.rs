//! Seeded sample generators over a small exact grid of rationals, for
//! the randomized checks and the axiom sampler. The stream cipher rng
//! keeps every draw reproducible from the seed alone.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::puiseux::PuiseuxSeries;
use crate::spoly::SPolynomial;
use crate::system::{El, SValue, Sign};
use crate::tmax::Fin;
use crate::tpoly::TPolynomial;
use crate::{PSeries, Rat, SPoly, SVal, TPoly};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A small exact rational: numerator in -4..=4 over denominator 1
    /// or 2.
    pub fn rat(&mut self) -> Rat {
        let num = self.rng.gen_range(-4i64..=4);
        let den = if self.rng.gen_bool(0.3) { 2 } else { 1 };
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn sign(&mut self) -> Sign {
        if self.rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    /// Any element: zero, signed, or balanced.
    pub fn sval(&mut self) -> SVal {
        match self.rng.gen_range(0..8) {
            0 => SValue::Zero,
            1 | 2 => El(Sign::Bal, self.rat()),
            _ => El(self.sign(), self.rat()),
        }
    }

    /// A signed nonzero element.
    pub fn sval_signed(&mut self) -> SVal {
        El(self.sign(), self.rat())
    }

    /// A nonzero max-plus polynomial of the exact given degree.
    pub fn tpoly(&mut self, deg: usize) -> TPoly {
        let mut p = TPolynomial::zero();
        p.set(deg, Fin(self.rat()));
        for k in 0..deg {
            if self.rng.gen_bool(0.7) {
                p.set(k, Fin(self.rat()));
            }
        }
        p
    }

    /// A nonzero all-signed polynomial of the exact given degree.
    pub fn spoly_signed(&mut self, deg: usize) -> SPoly {
        let mut p = SPolynomial::zero();
        p.set(deg, self.sval_signed());
        for k in 0..deg {
            if self.rng.gen_bool(0.7) {
                p.set(k, self.sval_signed());
            }
        }
        p
    }

    /// A nonzero polynomial of the exact given degree, balanced
    /// coefficients allowed.
    pub fn spoly(&mut self, deg: usize) -> SPoly {
        let mut p = SPolynomial::zero();
        loop {
            let c = self.sval();
            if !c.is_zero() {
                p.set(deg, c);
                break;
            }
        }
        for k in 0..deg {
            match self.rng.gen_range(0..10) {
                0..=2 => {}
                3 | 4 => p.set(k, El(Sign::Bal, self.rat())),
                _ => p.set(k, self.sval_signed()),
            }
        }
        p
    }

    /// A short Puiseux series, usually nonzero, with one to three terms.
    pub fn pseries(&mut self) -> PSeries {
        if self.rng.gen_bool(0.1) {
            return PuiseuxSeries::zero();
        }
        let n = self.rng.gen_range(1..=3);
        let mut terms = Vec::with_capacity(n);
        for _ in 0..n {
            let mut c = self.rat();
            if c.is_zero() {
                c = Rat::one();
            }
            terms.push((c, self.rat()));
        }
        PuiseuxSeries::from_terms(terms)
    }

    /// A list of series roots for product-form inputs.
    pub fn roots(&mut self, n: usize) -> Vec<PSeries> {
        (0..n).map(|_| self.pseries()).collect()
    }

    /// Sample triples for axiom checks.
    pub fn triples(&mut self, n: usize) -> Vec<(SVal, SVal, SVal)> {
        (0..n)
            .map(|_| (self.sval(), self.sval(), self.sval()))
            .collect()
    }

    /// Sample pairs for construction checks.
    pub fn pairs(&mut self, n: usize) -> Vec<(SVal, SVal)> {
        (0..n).map(|_| (self.sval(), self.sval())).collect()
    }
}
