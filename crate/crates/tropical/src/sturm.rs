//! Exact real-root counting for rational polynomials via Sturm chains.
//! Chains use content-stripped remainders (positive scaling only, so
//! sign patterns are preserved) to keep coefficient growth in check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rat, Result};

/// Dense rational polynomial; index is the degree, leading coefficient
/// nonzero, empty vector for the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rat>,
}

impl RatPolynomial {
    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rat)>>(terms: I) -> Self {
        let mut coeffs: Vec<Rat> = Vec::new();
        for (k, c) in terms {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] = coeffs[k].clone() + c;
        }
        Self::new(coeffs)
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> RatPolynomial {
        if self.coeffs.len() <= 1 {
            return RatPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * Rat::from_integer(BigInt::from(k)))
            .collect();
        RatPolynomial::new(coeffs)
    }

    pub fn neg(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || other.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        RatPolynomial::new(out)
    }

    /// Exact euclidean division; panics only if the divisor is zero.
    pub fn divrem(&self, divisor: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.lead().unwrap().clone();
        let ddeg = divisor.deg().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<Rat> = Vec::new();
        while rem.len() > ddeg {
            let shift = rem.len() - 1 - ddeg;
            let factor = rem.last().unwrap().clone() / dlead.clone();
            if quot.len() <= shift {
                quot.resize(shift + 1, Rat::zero());
            }
            quot[shift] = factor.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i + shift;
                rem[idx] = rem[idx].clone() - factor.clone() * dc.clone();
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= ddeg {
                break;
            }
        }
        (RatPolynomial::new(quot), RatPolynomial::new(rem))
    }

    /// Divides by the positive content (gcd of numerators over lcm of
    /// denominators); leaves signs untouched.
    pub fn strip_content(&self) -> RatPolynomial {
        if self.is_zero() {
            return RatPolynomial::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rat::new(num_gcd, den_lcm);
        RatPolynomial::new(self.coeffs.iter().map(|c| c.clone() / content.clone()).collect())
    }

    /// Drops the largest power of the variable dividing the polynomial;
    /// returns the stripped polynomial and that power.
    pub fn strip_zero_roots(&self) -> (RatPolynomial, usize) {
        if self.is_zero() {
            return (RatPolynomial::zero(), 0);
        }
        let low = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        (RatPolynomial::new(self.coeffs[low..].to_vec()), low)
    }
}

fn sign_of(c: &Rat) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: &[i8]) -> usize {
    let mut count = 0;
    let mut last: Option<i8> = None;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// The canonical Sturm chain of a nonzero polynomial, content-stripped.
fn sturm_chain(q: &RatPolynomial) -> Vec<RatPolynomial> {
    let mut chain = vec![q.strip_content()];
    let d = q.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.strip_content());
    loop {
        let len = chain.len();
        let (_, rem) = chain[len - 2].divrem(&chain[len - 1]);
        if rem.is_zero() {
            break;
        }
        chain.push(rem.neg().strip_content());
    }
    chain
}

fn variations_at_zero(chain: &[RatPolynomial]) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign_of(&p.coeff(0))).collect();
    variations(&signs)
}

fn variations_at_pos_inf(chain: &[RatPolynomial]) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| p.lead().map_or(0, sign_of))
        .collect();
    variations(&signs)
}

fn variations_at_neg_inf(chain: &[RatPolynomial]) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| match p.deg() {
            None => 0,
            Some(d) => {
                let s = sign_of(p.lead().unwrap());
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        })
        .collect();
    variations(&signs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    Positive,
    Negative,
    All,
}

impl Interval {
    pub fn from_tag(s: &str) -> Result<Interval> {
        match s {
            "positive" | "pos" => Ok(Interval::Positive),
            "negative" | "neg" => Ok(Interval::Negative),
            "all" => Ok(Interval::All),
            other => Err(Error::domain(format!("unknown interval tag: {other}"))),
        }
    }
}

/// Number of distinct real roots in the interval, counted exactly. A
/// zero root is excluded from the signed intervals and included in the
/// full-line count.
pub fn sturm_count(q: &RatPolynomial, interval: Interval) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::domain(
            "root counting of the zero polynomial is undefined",
        ));
    }
    let (core, zero_power) = q.strip_zero_roots();
    if core.deg() == Some(0) {
        return Ok(match interval {
            Interval::All if zero_power > 0 => 1,
            _ => 0,
        });
    }
    let chain = sturm_chain(&core);
    let at_zero = variations_at_zero(&chain);
    let at_pos = variations_at_pos_inf(&chain);
    let at_neg = variations_at_neg_inf(&chain);
    Ok(match interval {
        Interval::Positive => at_zero - at_pos,
        Interval::Negative => at_neg - at_zero,
        Interval::All => at_neg - at_pos + usize::from(zero_power > 0),
    })
}

/// All roots simple: the derivative shares no factor with the
/// polynomial. Decided by an exact euclidean gcd.
pub fn sturm_squarefree_check(q: &RatPolynomial) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::domain(
            "squarefree check of the zero polynomial is undefined",
        ));
    }
    if q.deg() == Some(0) {
        return Ok(true);
    }
    let mut a = q.strip_content();
    let mut b = q.derivative().strip_content();
    while !b.is_zero() {
        let (_, rem) = a.divrem(&b);
        a = b;
        b = rem.strip_content();
    }
    Ok(a.deg() == Some(0))
}
