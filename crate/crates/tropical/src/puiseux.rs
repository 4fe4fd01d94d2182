//! Finite Puiseux series with exact rational coefficients and exponents,
//! polynomials over them, the signed valuation, Viro lifts, initial
//! forms, and the Descartes verification harness: root counts of a lift,
//! taken per signed valuation through initial forms and Sturm counting,
//! against the multiplicities of the signed projection.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::mult;
use crate::spoly::SPolynomial;
use crate::sturm::{sturm_count, sturm_squarefree_check, Interval, RatPolynomial};
use crate::system::{El, SValue, Sign};
use crate::tmax::{Bot, Fin, GValue};
use crate::tpoly::{self, TPolynomial};
use crate::{Error, Rat, Result, SVal};

/// A finite Puiseux series: exact rational coefficients over exact
/// rational exponents, stored with strictly decreasing exponents and no
/// zero coefficients. The valuation is the largest exponent present.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PuiseuxSeries {
    terms: Vec<(Rat, Rat)>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        PuiseuxSeries { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Rat::zero())
    }

    /// The single term `c * t^e`.
    pub fn term(c: Rat, e: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            PuiseuxSeries { terms: vec![(c, e)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Rat, Rat)>>(terms: I) -> Self {
        let mut merged: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (c, e) in terms {
            let entry = merged.entry(e).or_insert_with(Rat::zero);
            *entry = entry.clone() + c;
        }
        let mut out: Vec<(Rat, Rat)> = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e))
            .collect();
        out.shrink_to_fit();
        PuiseuxSeries { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (coefficient, exponent), leading term first.
    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    /// The valuation: the largest exponent, if any.
    pub fn valuation(&self) -> Option<&Rat> {
        self.terms.first().map(|(_, e)| e)
    }

    /// The dominant coefficient: the coefficient at the valuation.
    pub fn dominant_coeff(&self) -> Option<&Rat> {
        self.terms.first().map(|(c, _)| c)
    }
}

pub fn ps_add(f: &PuiseuxSeries, g: &PuiseuxSeries) -> PuiseuxSeries {
    PuiseuxSeries::from_terms(f.terms.iter().chain(g.terms.iter()).cloned())
}

pub fn ps_neg(f: &PuiseuxSeries) -> PuiseuxSeries {
    PuiseuxSeries {
        terms: f
            .terms
            .iter()
            .map(|(c, e)| (-c.clone(), e.clone()))
            .collect(),
    }
}

pub fn ps_sub(f: &PuiseuxSeries, g: &PuiseuxSeries) -> PuiseuxSeries {
    ps_add(f, &ps_neg(g))
}

pub fn ps_mul(f: &PuiseuxSeries, g: &PuiseuxSeries) -> PuiseuxSeries {
    let mut products = Vec::with_capacity(f.terms.len() * g.terms.len());
    for (cf, ef) in &f.terms {
        for (cg, eg) in &g.terms {
            products.push((cf.clone() * cg.clone(), ef.clone() + eg.clone()));
        }
    }
    PuiseuxSeries::from_terms(products)
}

/// The signed valuation: sign of the dominant coefficient carrying the
/// valuation as magnitude; zero maps to zero.
pub fn sv(f: &PuiseuxSeries) -> SVal {
    match (f.dominant_coeff(), f.valuation()) {
        (Some(c), Some(v)) => {
            let s = if c.is_positive() { Sign::Pos } else { Sign::Neg };
            El(s, v.clone())
        }
        _ => SValue::Zero,
    }
}

/// Dense polynomial over Puiseux series; index is the degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FPolynomial {
    coeffs: Vec<PuiseuxSeries>,
}

impl FPolynomial {
    pub fn new(mut coeffs: Vec<PuiseuxSeries>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        FPolynomial { coeffs: Vec::new() }
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

    pub fn coeff(&self, k: usize) -> PuiseuxSeries {
        self.coeffs.get(k).cloned().unwrap_or_else(PuiseuxSeries::zero)
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn mul(&self, other: &FPolynomial) -> FPolynomial {
        if self.is_zero() || other.is_zero() {
            return FPolynomial::zero();
        }
        let mut out = vec![PuiseuxSeries::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ps_add(&out[i + j], &ps_mul(a, b));
            }
        }
        FPolynomial::new(out)
    }
}

/// Coefficient-wise signed valuation.
pub fn sv_poly(p: &FPolynomial) -> SPolynomial<Rat> {
    SPolynomial::from_terms(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k, sv(c))),
    )
}

/// Coefficient-wise valuation, a max-plus polynomial.
pub fn val_poly(p: &FPolynomial) -> TPolynomial<Rat> {
    TPolynomial::from_terms(p.coeffs.iter().enumerate().map(|(k, c)| {
        (
            k,
            match c.valuation() {
                None => Bot,
                Some(v) => Fin(v.clone()),
            },
        )
    }))
}

/// The exact monic expansion of the product of `Y - x` over the roots.
pub fn expand_linear_product(roots: &[PuiseuxSeries]) -> FPolynomial {
    let mut acc = FPolynomial::new(vec![PuiseuxSeries::one()]);
    for x in roots {
        let factor = FPolynomial::new(vec![ps_neg(x), PuiseuxSeries::one()]);
        acc = acc.mul(&factor);
    }
    acc
}

/// Tallies the signed valuation of each supplied root.
pub fn count_roots_by_sv(roots: &[PuiseuxSeries]) -> Vec<(SVal, usize)> {
    let mut map: BTreeMap<SVal, usize> = BTreeMap::new();
    for x in roots {
        *map.entry(sv(x)).or_insert(0) += 1;
    }
    map.into_iter().collect()
}

/// The initial form at a tangible point whose magnitude is a corner of
/// the projected polynomial: the rational polynomial of dominant
/// coefficients over the saturation set.
pub fn initial_form(p: &FPolynomial, r: &SVal) -> Result<RatPolynomial> {
    let c = match r {
        El(Sign::Pos | Sign::Neg, c) => c,
        _ => return Err(Error::domain("initial form requires a tangible point")),
    };
    let sp = sv_poly(p);
    if sp.is_zero() {
        return Err(Error::domain("initial form of the zero polynomial is undefined"));
    }
    let corners = tpoly::corners(&sp.modulus())?;
    if !corners.finite().iter().any(|(v, _)| v == c) {
        return Err(Error::domain(
            "initial form requires the magnitude to be a corner",
        ));
    }
    let sat = mult::sat_set(&sp, c);
    Ok(RatPolynomial::from_terms(sat.into_iter().map(|k| {
        let dc = p
            .coeff(k)
            .dominant_coeff()
            .cloned()
            .expect("saturated coefficient is nonzero");
        (k, dc)
    })))
}

/// Exact rational power `u^e`, requiring the result to be rational: the
/// exponent's denominator must extract an exact root of `u`.
pub fn rat_pow(u: &Rat, e: &Rat) -> Result<Rat> {
    if !u.is_positive() {
        return Err(Error::domain("powers are defined for positive bases only"));
    }
    let q = e.denom().clone();
    let base = if q.is_one() {
        u.clone()
    } else {
        let qq: u32 = q
            .to_biguint()
            .and_then(|b| u32::try_from(b).ok())
            .ok_or_else(|| Error::domain("exponent denominator too large"))?;
        let rn = u.numer().nth_root(qq);
        let rd = u.denom().nth_root(qq);
        if rn.clone().pow(qq) != *u.numer() || rd.clone().pow(qq) != *u.denom() {
            return Err(Error::domain(
                "the requested power of the base is not rational",
            ));
        }
        Rat::new(rn, rd)
    };
    let p = e.numer();
    let mag = p.magnitude();
    let exp: u32 = u32::try_from(mag.clone())
        .map_err(|_| Error::domain("exponent numerator too large"))?;
    let powered = Rat::new(base.numer().pow(exp), base.denom().pow(exp));
    if p.is_negative() {
        Ok(powered.recip())
    } else {
        Ok(powered)
    }
}

/// The default strictly concave weight: minus the squared degree.
pub fn omega_quadratic(deg: usize) -> Vec<Rat> {
    (0..=deg)
        .map(|k| {
            let k = BigInt::from(k);
            Rat::from_integer(-(k.clone() * k))
        })
        .collect()
}

fn strictly_concave(omega: &[Rat]) -> bool {
    omega.windows(3).all(|w| {
        let two = Rat::from_integer(BigInt::from(2));
        w[0].clone() + w[2].clone() < two * w[1].clone()
    })
}

/// Lifts a signed polynomial to a polynomial over Puiseux series: the
/// degree-k coefficient is the single term `s_k * u^{omega_k} * t^{m_k}`
/// with the sign and magnitude taken from the input coefficient. The
/// signed valuation of the lift recovers the input exactly.
pub fn viro_lift(p: &SPolynomial<Rat>, u: &Rat, omega: &[Rat]) -> Result<FPolynomial> {
    if p.is_zero() {
        return Err(Error::domain("lifting the zero polynomial is undefined"));
    }
    if !p.all_signed() {
        return Err(Error::domain(
            "lifting requires signed coefficients, found a balanced one",
        ));
    }
    if !u.is_positive() {
        return Err(Error::domain("the lift parameter must be positive"));
    }
    let n = p.deg().unwrap();
    if omega.len() != n + 1 {
        return Err(Error::domain(format!(
            "the weight must assign one value per degree 0..={n}"
        )));
    }
    if !strictly_concave(omega) {
        return Err(Error::domain("the weight must be strictly concave"));
    }
    let mut coeffs = vec![PuiseuxSeries::zero(); n + 1];
    for (k, c) in p.terms() {
        let El(s, m) = c else { unreachable!("stored coefficients are nonzero") };
        let scale = rat_pow(u, &omega[k])?;
        let signed = match s {
            Sign::Pos => scale,
            Sign::Neg => -scale,
            Sign::Bal => unreachable!("signed input"),
        };
        coeffs[k] = PuiseuxSeries::term(signed, m.clone());
    }
    Ok(FPolynomial::new(coeffs))
}

/// Per-corner outcome of a Descartes verification attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescartesCorner {
    pub corner: Rat,
    pub mult_pos: usize,
    pub mult_neg: usize,
    pub count_pos: usize,
    pub count_neg: usize,
    pub squarefree: bool,
}

impl DescartesCorner {
    pub fn tight(&self) -> bool {
        self.squarefree && self.count_pos == self.mult_pos && self.count_neg == self.mult_neg
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescartesReport {
    pub success: bool,
    /// The lift parameter that achieved tightness at every corner.
    pub witness_u: Option<Rat>,
    pub attempts: usize,
    pub zero_mult: usize,
    pub corners: Vec<DescartesCorner>,
}

/// Searches for a lift witnessing tightness of the multiplicity bound:
/// with the quadratic weight, the parameter is squared repeatedly until
/// every corner's initial form is squarefree with positive and negative
/// root counts matching the two signed multiplicities. Failure to find
/// one within the cap is reported, not raised.
pub fn verify_descartes(
    p: &SPolynomial<Rat>,
    u_start: &Rat,
    cap: usize,
) -> Result<DescartesReport> {
    let summary = mult::mult_sum_check(p)?;
    let n = p.deg().unwrap();
    let omega = omega_quadratic(n);
    let mut u = u_start.clone();
    let mut attempts = 0;
    let mut last_corners = Vec::new();
    while attempts < cap {
        attempts += 1;
        let lift = viro_lift(p, &u, &omega)?;
        let mut corners = Vec::with_capacity(summary.per_corner.len());
        for cm in &summary.per_corner {
            let q = initial_form(&lift, &El(Sign::Pos, cm.corner.clone()))?;
            let (core, _) = q.strip_zero_roots();
            let squarefree = sturm_squarefree_check(&core)?;
            let count_pos = sturm_count(&core, Interval::Positive)?;
            let count_neg = sturm_count(&core, Interval::Negative)?;
            corners.push(DescartesCorner {
                corner: cm.corner.clone(),
                mult_pos: cm.mult_pos,
                mult_neg: cm.mult_neg,
                count_pos,
                count_neg,
                squarefree,
            });
        }
        if corners.iter().all(|c| c.tight()) {
            return Ok(DescartesReport {
                success: true,
                witness_u: Some(u),
                attempts,
                zero_mult: summary.zero_mult,
                corners,
            });
        }
        last_corners = corners;
        u = u.clone() * u;
    }
    Ok(DescartesReport {
        success: false,
        witness_u: None,
        attempts,
        zero_mult: summary.zero_mult,
        corners: last_corners,
    })
}

/// Per-corner outcome of checking an arbitrary caller-supplied lift
/// against the multiplicity bound and the parity congruence. Counts are
/// only available where the stripped initial form is squarefree; the
/// two flags are vacuously true otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCorner {
    pub corner: Rat,
    pub mult_pos: usize,
    pub mult_neg: usize,
    pub squarefree: bool,
    pub count_pos: Option<usize>,
    pub count_neg: Option<usize>,
    pub inequality_ok: bool,
    pub mod2_ok: bool,
}

/// Checks a lift of `p`: the real-root counts of each corner's initial
/// form, split by sign, must be bounded by the corresponding
/// multiplicities and agree with them modulo two.
pub fn check_lift(p: &SPolynomial<Rat>, lift: &FPolynomial) -> Result<Vec<LiftCorner>> {
    if sv_poly(lift) != *p {
        return Err(Error::domain(
            "the lift's signed valuation does not match the polynomial",
        ));
    }
    let summary = mult::mult_sum_check(p)?;
    let mut out = Vec::with_capacity(summary.per_corner.len());
    for cm in &summary.per_corner {
        let q = initial_form(lift, &El(Sign::Pos, cm.corner.clone()))?;
        let (core, _) = q.strip_zero_roots();
        let squarefree = sturm_squarefree_check(&core)?;
        let (count_pos, count_neg, inequality_ok, mod2_ok) = if squarefree {
            let cp = sturm_count(&core, Interval::Positive)?;
            let cn = sturm_count(&core, Interval::Negative)?;
            (
                Some(cp),
                Some(cn),
                cp <= cm.mult_pos && cn <= cm.mult_neg,
                cp % 2 == cm.mult_pos % 2 && cn % 2 == cm.mult_neg % 2,
            )
        } else {
            (None, None, true, true)
        };
        out.push(LiftCorner {
            corner: cm.corner.clone(),
            mult_pos: cm.mult_pos,
            mult_neg: cm.mult_neg,
            squarefree,
            count_pos,
            count_neg,
            inequality_ok,
            mod2_ok,
        });
    }
    Ok(out)
}

/// For a product of linear factors, the root valuations (with
/// multiplicity) coincide with the corners of the coefficient-wise
/// valuation polynomial. Verifies that equality exactly.
pub fn kapranov_check(roots: &[PuiseuxSeries]) -> Result<bool> {
    let p = expand_linear_product(roots);
    let vp = val_poly(&p);
    let corners = tpoly::corners(&vp)?;
    let mut corner_multiset: Vec<GValue<Rat>> = corners.expand();
    let mut val_multiset: Vec<GValue<Rat>> = roots
        .iter()
        .map(|x| match x.valuation() {
            None => Bot,
            Some(v) => Fin(v.clone()),
        })
        .collect();
    corner_multiset.sort();
    val_multiset.sort();
    Ok(corner_multiset == val_multiset)
}
