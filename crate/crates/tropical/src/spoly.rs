//! Polynomials over the signed max-plus semiring: evaluation, the finite
//! signed-root search, factorization of the polynomial function, the
//! maximum (sharp) representative, and a uniqueness decision.

use std::collections::BTreeMap;


use crate::system::{s_add, s_div, s_mul, s_neg, s_pow, El, SValue, Zero};
use crate::tpoly::{self, TPolynomial};
use crate::{Error, Result, Scalar};

/// Sparse polynomial over the signed semiring; zero coefficients are not
/// stored. Coefficients may be balanced (expansions produce them), while
/// the factorization entry points require signed input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SPolynomial<S> {
    coeffs: BTreeMap<usize, SValue<S>>,
}

impl<S: Scalar> SPolynomial<S> {
    pub fn zero() -> Self {
        SPolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, SValue<S>)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, v) in terms {
            p.set(k, v);
        }
        p
    }

    pub fn monomial(k: usize, v: SValue<S>) -> Self {
        Self::from_terms([(k, v)])
    }

    pub fn set(&mut self, k: usize, v: SValue<S>) {
        if v.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn coeff(&self, k: usize) -> SValue<S> {
        self.coeffs.get(&k).cloned().unwrap_or(Zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn uval(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &SValue<S>)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    /// All stored coefficients signed (no balanced entries).
    pub fn all_signed(&self) -> bool {
        self.coeffs.values().all(|v| v.is_signed())
    }

    /// Coefficient-wise modulus, a max-plus polynomial.
    pub fn modulus(&self) -> TPolynomial<S> {
        TPolynomial::from_terms(
            self.terms()
                .map(|(k, v)| (k, crate::system::s_mod(v))),
        )
    }
}

/// Evaluation over the signed semiring.
pub fn s_eval<S: Scalar>(p: &SPolynomial<S>, y: &SValue<S>) -> SValue<S> {
    let mut acc = Zero;
    for (k, c) in p.terms() {
        acc = s_add(&acc, &s_mul(c, &s_pow(y, k)));
    }
    acc
}

/// Coefficient-wise sum.
pub fn s_add_poly<S: Scalar>(p: &SPolynomial<S>, q: &SPolynomial<S>) -> SPolynomial<S> {
    let mut out = p.clone();
    for (k, c) in q.terms() {
        let cur = out.coeff(k);
        out.set(k, s_add(&cur, c));
    }
    out
}

/// Cauchy product.
pub fn s_mul_poly<S: Scalar>(p: &SPolynomial<S>, q: &SPolynomial<S>) -> SPolynomial<S> {
    let mut out = SPolynomial::zero();
    for (i, a) in p.terms() {
        for (j, b) in q.terms() {
            let cur = out.coeff(i + j);
            out.set(i + j, s_add(&cur, &s_mul(a, b)));
        }
    }
    out
}

/// Substitution of a scalar multiple of the variable: the polynomial with
/// coefficients `P_k * a^k`.
pub fn s_compose_scale<S: Scalar>(p: &SPolynomial<S>, a: &SValue<S>) -> SPolynomial<S> {
    SPolynomial::from_terms(p.terms().map(|(k, c)| (k, s_mul(c, &s_pow(a, k)))))
}

fn require_signed_input<S: Scalar>(p: &SPolynomial<S>, what: &str) -> Result<()> {
    if p.is_zero() {
        return Err(Error::domain(format!(
            "{what} of the zero polynomial is undefined"
        )));
    }
    if !p.all_signed() {
        return Err(Error::domain(format!(
            "{what} requires signed coefficients, found a balanced one"
        )));
    }
    Ok(())
}

/// The finite candidate set which provably contains every signed root:
/// zero when the lower degree is positive, and both signed values over
/// each finite corner magnitude of the modulus polynomial.
pub fn root_candidates<S: Scalar>(p: &SPolynomial<S>) -> Result<Vec<SValue<S>>> {
    if p.is_zero() {
        return Err(Error::domain("roots of the zero polynomial are undefined"));
    }
    let cs = tpoly::corners(&p.modulus())?;
    let mut out = Vec::new();
    if p.uval().unwrap() > 0 {
        out.push(Zero);
    }
    for (c, _) in cs.finite() {
        out.push(SValue::pos(c.clone()));
        out.push(SValue::neg(c));
    }
    Ok(out)
}

/// Flags each candidate by whether the evaluation balances zero there,
/// i.e. whether it is a signed root.
pub fn signed_roots<S: Scalar>(p: &SPolynomial<S>) -> Result<Vec<(SValue<S>, bool)>> {
    require_signed_input(p, "root search")?;
    Ok(root_candidates(p)?
        .into_iter()
        .map(|cand| {
            let is_root = s_eval(p, &cand).is_bal_or_zero();
            (cand, is_root)
        })
        .collect())
}

/// A factorization of a polynomial function into linear factors
/// `lead * prod (Y - r_i)`: the lead is tangible and every root signed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<S> {
    pub lead: SValue<S>,
    pub roots: Vec<SValue<S>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorOutcome<S> {
    Factored(Factorization<S>),
    /// The sufficient condition (modulus polynomial formally factored)
    /// does not apply; the function may still be factorable.
    NotFactoredBySufficientCondition,
}

/// Factors the polynomial function when the modulus polynomial is
/// formally factored: the i-th root solves `r * P_{n-i+1} = -P_{n-i}`,
/// and the trailing roots are zero, one per unit of lower degree. The
/// root moduli are then the corners of the modulus, with multiplicity.
pub fn factor_function<S: Scalar>(p: &SPolynomial<S>) -> Result<FactorOutcome<S>> {
    require_signed_input(p, "factorization")?;
    if !tpoly::is_factored_formal(&p.modulus()) {
        return Ok(FactorOutcome::NotFactoredBySufficientCondition);
    }
    let n = p.deg().unwrap();
    let m = p.uval().unwrap();
    let lead = p.coeff(n);
    let mut roots = Vec::with_capacity(n);
    for i in 1..=(n - m) {
        let num = s_neg(&p.coeff(n - i));
        let den = p.coeff(n - i + 1);
        roots.push(s_div(&num, &den)?);
    }
    roots.resize(n, Zero);
    Ok(FactorOutcome::Factored(Factorization { lead, roots }))
}

/// Formal expansion of a factorization. By construction this is the
/// maximum representative of its polynomial function: every other formal
/// polynomial with the same function is coefficient-wise below it.
pub fn sharp_representative<S: Scalar>(f: &Factorization<S>) -> SPolynomial<S> {
    let mut acc = SPolynomial::monomial(0, f.lead.clone());
    for r in &f.roots {
        let factor = SPolynomial::from_terms([(1, SValue::one()), (0, s_neg(r))]);
        acc = s_mul_poly(&acc, &factor);
    }
    acc
}

/// Magnitudes at which two signed polynomial functions must be compared
/// to decide equality: all finite corner magnitudes of both moduli, the
/// midpoints of consecutive ones, and one point beyond each extreme.
/// Between consecutive breakpoints both functions are single monomials,
/// so agreement on this set forces agreement everywhere.
pub fn decision_magnitudes<S: Scalar>(polys: &[&SPolynomial<S>]) -> Vec<S> {
    let mut mags: Vec<S> = Vec::new();
    for p in polys {
        let modp = p.modulus();
        if modp.is_zero() {
            continue;
        }
        if let Ok(cs) = tpoly::corners(&modp) {
            for (c, _) in cs.finite() {
                mags.push(c);
            }
        }
    }
    mags.sort();
    mags.dedup();
    if mags.is_empty() {
        return vec![-S::one(), S::zero(), S::one()];
    }
    let mut out = Vec::with_capacity(2 * mags.len() + 1);
    let two = S::one() + S::one();
    out.push(mags[0].clone() - S::one());
    for i in 0..mags.len() {
        out.push(mags[i].clone());
        if i + 1 < mags.len() {
            out.push((mags[i].clone() + mags[i + 1].clone()) / two.clone());
        }
    }
    out.push(mags[mags.len() - 1].clone() + S::one());
    out
}

/// The signed sample points for function-equality decisions: both signs
/// over every decision magnitude, plus the zero point.
pub fn decision_samples<S: Scalar>(polys: &[&SPolynomial<S>]) -> Vec<SValue<S>> {
    let mut out = vec![Zero];
    for m in decision_magnitudes(polys) {
        out.push(SValue::pos(m.clone()));
        out.push(SValue::neg(m));
    }
    out
}

/// Exact equality of the two polynomial functions on signed arguments.
pub fn function_eq<S: Scalar>(p: &SPolynomial<S>, q: &SPolynomial<S>) -> bool {
    decision_samples(&[p, q])
        .iter()
        .all(|y| s_eval(p, y) == s_eval(q, y))
}

/// Coefficient-wise natural order between formal polynomials.
pub fn preceq_coeffwise<S: Scalar>(p: &SPolynomial<S>, q: &SPolynomial<S>) -> bool {
    let mut keys: Vec<usize> = p.support().chain(q.support()).collect();
    keys.sort();
    keys.dedup();
    keys.iter()
        .all(|&k| crate::system::order_natural(&p.coeff(k), &q.coeff(k)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniqueFactorization<S> {
    Unique(Factorization<S>),
    /// At least two root multisets produce the same polynomial function;
    /// the witnesses are returned in enumeration order.
    NonUnique(Vec<Factorization<S>>),
    Unknown,
}

/// Enumeration guard: the number of per-corner sign splits is a product
/// of multiplicities; beyond this bound the search is abandoned.
const MAX_CANDIDATE_MULTISETS: usize = 100_000;

/// All root multisets compatible with the corner structure: each finite
/// corner magnitude split between positive and negative roots in every
/// possible way, zeros appended for the lower degree.
fn candidate_multisets<S: Scalar>(p: &SPolynomial<S>) -> Option<Vec<Vec<SValue<S>>>> {
    let modp = p.modulus();
    let cs = tpoly::corners(&modp).ok()?;
    let finite = cs.finite();
    let zeros = p.uval().unwrap_or(0);
    let mut count: usize = 1;
    for (_, m) in &finite {
        count = count.checked_mul(m + 1)?;
        if count > MAX_CANDIDATE_MULTISETS {
            return None;
        }
    }
    let mut split = vec![0usize; finite.len()];
    let mut out = Vec::with_capacity(count);
    loop {
        let mut roots = Vec::new();
        for (j, (c, m)) in finite.iter().enumerate() {
            let pos = m - split[j];
            for _ in 0..pos {
                roots.push(SValue::pos(c.clone()));
            }
            for _ in 0..split[j] {
                roots.push(SValue::neg(c.clone()));
            }
        }
        roots.resize(roots.len() + zeros, Zero);
        out.push(roots);
        // odometer over per-corner negative-root counts
        let mut j = 0;
        loop {
            if j == finite.len() {
                return Some(out);
            }
            if split[j] < finite[j].1 {
                split[j] += 1;
                break;
            }
            split[j] = 0;
            j += 1;
        }
    }
}

/// Decides uniqueness of the factorization of the polynomial function.
///
/// When the modulus polynomial is formally factored and no corner
/// magnitude receives roots of both signs, the factorization is unique.
/// Otherwise all corner-compatible root multisets are enumerated and
/// checked against the function; two or more matches witness
/// non-uniqueness. A single match or none is reported as unknown: the
/// sufficient condition gives no verdict there, and this procedure does
/// not guess.
pub fn unique_factorization<S: Scalar>(p: &SPolynomial<S>) -> Result<UniqueFactorization<S>> {
    require_signed_input(p, "factorization")?;
    if let FactorOutcome::Factored(f) = factor_function(p)? {
        let double_signed = f.roots.iter().any(|r| match r {
            El(s, m) => f.roots.iter().any(|r2| match r2 {
                El(s2, m2) => m2 == m && s2 != s,
                Zero => false,
            }),
            Zero => false,
        });
        if !double_signed {
            return Ok(UniqueFactorization::Unique(f));
        }
    }
    let lead = p.coeff(p.deg().unwrap());
    let Some(multisets) = candidate_multisets(p) else {
        return Ok(UniqueFactorization::Unknown);
    };
    let mut witnesses = Vec::new();
    for roots in multisets {
        let f = Factorization {
            lead: lead.clone(),
            roots,
        };
        let expansion = sharp_representative(&f);
        if function_eq(&expansion, p) {
            witnesses.push(f);
        }
    }
    if witnesses.len() >= 2 {
        Ok(UniqueFactorization::NonUnique(witnesses))
    } else {
        Ok(UniqueFactorization::Unknown)
    }
}
