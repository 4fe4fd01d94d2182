//! Sparse max-plus polynomials: evaluation, corners with multiplicities,
//! the concave hull, the canonical form, and factorization into linear
//! factors. Corners are the abscissae where the evaluation maximum is
//! attained at least twice; they coincide with the negated slopes of the
//! upper Newton polygon of the coefficient points.

use std::collections::BTreeMap;

use crate::tmax::{t_add, t_mul, t_pow, Bot, Fin, GValue};
use crate::{Error, Result, Scalar};

/// Sparse polynomial over the max-plus semiring; only finite coefficients
/// are stored, so the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TPolynomial<S> {
    coeffs: BTreeMap<usize, S>,
}

impl<S: Scalar> TPolynomial<S> {
    pub fn zero() -> Self {
        TPolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, GValue<S>)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, v) in terms {
            p.set(k, v);
        }
        p
    }

    pub fn monomial(k: usize, v: GValue<S>) -> Self {
        Self::from_terms([(k, v)])
    }

    /// Sets one coefficient; a bottom value erases the term.
    pub fn set(&mut self, k: usize, v: GValue<S>) {
        match v {
            Bot => {
                self.coeffs.remove(&k);
            }
            Fin(m) => {
                self.coeffs.insert(k, m);
            }
        }
    }

    pub fn coeff(&self, k: usize) -> GValue<S> {
        match self.coeffs.get(&k) {
            None => Bot,
            Some(m) => Fin(m.clone()),
        }
    }

    pub fn coeff_ref(&self, k: usize) -> Option<&S> {
        self.coeffs.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or none for the zero polynomial (the minus-infinity sentinel).
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lower degree, or none for the zero polynomial (the plus-infinity
    /// sentinel).
    pub fn uval(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }
}

/// Corners in strictly decreasing order; a bottom corner, if present, is
/// last and carries the lower degree as multiplicity. Multiplicities sum
/// to the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerList<S> {
    pub items: Vec<(GValue<S>, usize)>,
}

impl<S: Scalar> CornerList<S> {
    pub fn total_mult(&self) -> usize {
        self.items.iter().map(|(_, m)| m).sum()
    }

    /// The corners repeated by multiplicity, largest first.
    pub fn expand(&self) -> Vec<GValue<S>> {
        let mut out = Vec::with_capacity(self.total_mult());
        for (c, m) in &self.items {
            for _ in 0..*m {
                out.push(c.clone());
            }
        }
        out
    }

    /// The finite corner magnitudes, largest first.
    pub fn finite(&self) -> Vec<(S, usize)> {
        self.items
            .iter()
            .filter_map(|(c, m)| c.fin().map(|v| (v.clone(), *m)))
            .collect()
    }
}

/// Evaluation: the maximum over the support of coefficient plus degree
/// times the argument.
pub fn t_eval<S: Scalar>(p: &TPolynomial<S>, y: &GValue<S>) -> GValue<S> {
    let mut acc = Bot;
    for (k, c) in p.terms() {
        let term = t_mul(&Fin(c.clone()), &t_pow(y, k));
        acc = t_add(&acc, &term);
    }
    acc
}

fn usize_scalar<S: Scalar>(n: usize) -> S {
    S::from_usize(n).expect("degree fits the scalar")
}

/// Is slope(a,b) <= slope(b,c)? Compared exactly by cross-multiplication;
/// both gaps are positive so the inequality direction is preserved.
fn slope_le<S: Scalar>(a: &(usize, S), b: &(usize, S), c: &(usize, S)) -> bool {
    let dx_ab: S = usize_scalar(b.0 - a.0);
    let dx_bc: S = usize_scalar(c.0 - b.0);
    let dy_ab = b.1.clone() - a.1.clone();
    let dy_bc = c.1.clone() - b.1.clone();
    dy_ab * dx_bc <= dy_bc * dx_ab
}

/// Vertices of the upper concave hull of the coefficient points, by
/// monotone chain with exact comparisons. Collinear interior points are
/// absorbed into their edge, so each edge is maximal.
fn hull_vertices<S: Scalar>(p: &TPolynomial<S>) -> Vec<(usize, S)> {
    let pts: Vec<(usize, S)> = p.terms().map(|(k, c)| (k, c.clone())).collect();
    let mut hull: Vec<(usize, S)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            if slope_le(a, b, &pt) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// Corners with multiplicities: negated edge slopes of the upper hull,
/// largest first, each weighted by its edge's horizontal length; then a
/// bottom corner carrying the lower degree when that is positive.
pub fn corners<S: Scalar>(p: &TPolynomial<S>) -> Result<CornerList<S>> {
    if p.is_zero() {
        return Err(Error::domain("corners of the zero polynomial are undefined"));
    }
    let hull = hull_vertices(p);
    let mut items = Vec::new();
    for w in (0..hull.len().saturating_sub(1)).rev() {
        let (i, vi) = &hull[w];
        let (j, vj) = &hull[w + 1];
        let mult = j - i;
        let c = (vi.clone() - vj.clone()) / usize_scalar(mult);
        items.push((Fin(c), mult));
    }
    let uval = p.uval().expect("nonzero polynomial");
    if uval > 0 {
        items.push((Bot, uval));
    }
    Ok(CornerList { items })
}

/// The concave hull: full support between lower degree and degree, with
/// each coefficient lifted to the hull value over its abscissa.
pub fn concave_hull<S: Scalar>(p: &TPolynomial<S>) -> TPolynomial<S> {
    if p.is_zero() {
        return TPolynomial::zero();
    }
    let hull = hull_vertices(p);
    let mut out = TPolynomial::zero();
    for w in 0..hull.len() {
        let (i, vi) = &hull[w];
        out.set(*i, Fin(vi.clone()));
        if w + 1 < hull.len() {
            let (j, vj) = &hull[w + 1];
            for k in (i + 1)..*j {
                let dx: S = usize_scalar(j - i);
                let wl: S = usize_scalar(j - k);
                let wr: S = usize_scalar(k - i);
                out.set(k, Fin((wl * vi.clone() + wr * vj.clone()) / dx));
            }
        }
    }
    out
}

/// The canonical form: for each degree in range, the exact infimum over
/// arguments of evaluation minus degree times argument. The infimum is
/// attained at a corner, so only the finite corner values are inspected.
/// Always equals the concave hull.
pub fn canonical_form<S: Scalar>(p: &TPolynomial<S>) -> Result<TPolynomial<S>> {
    if p.is_zero() {
        return Err(Error::domain(
            "canonical form of the zero polynomial is undefined",
        ));
    }
    let cs = corners(p)?;
    let finite: Vec<S> = cs.finite().into_iter().map(|(c, _)| c).collect();
    if finite.is_empty() {
        // single-term polynomial: already canonical
        return Ok(p.clone());
    }
    let evals: Vec<S> = finite
        .iter()
        .map(|y| match t_eval(p, &Fin(y.clone())) {
            Fin(v) => v,
            Bot => unreachable!("nonzero polynomial at a finite point"),
        })
        .collect();
    let (uval, deg) = (p.uval().unwrap(), p.deg().unwrap());
    let mut out = TPolynomial::zero();
    for k in uval..=deg {
        let k_s: S = usize_scalar(k);
        let mut best: Option<S> = None;
        for (y, v) in finite.iter().zip(&evals) {
            let cand = v.clone() - k_s.clone() * y.clone();
            best = Some(match best {
                None => cand,
                Some(b) => {
                    if cand < b {
                        cand
                    } else {
                        b
                    }
                }
            });
        }
        out.set(k, Fin(best.expect("at least one corner")));
    }
    Ok(out)
}

/// Leading coefficient and the corner multiset, largest corner first,
/// bottom corners last. Expanding the product of the linear factors
/// against the lead reproduces the concave hull.
pub fn t_factor<S: Scalar>(p: &TPolynomial<S>) -> Result<(GValue<S>, Vec<GValue<S>>)> {
    if p.is_zero() {
        return Err(Error::domain(
            "factorization of the zero polynomial is undefined",
        ));
    }
    let lead = p.coeff(p.deg().unwrap());
    Ok((lead, corners(p)?.expand()))
}

/// Structural test for being one's own concave hull: full support in the
/// degree range and discrete concavity of the coefficients. Checked
/// directly on the coefficients, without recomputing the hull.
pub fn is_factored_formal<S: Scalar>(p: &TPolynomial<S>) -> bool {
    let (Some(uval), Some(deg)) = (p.uval(), p.deg()) else {
        return true;
    };
    for k in uval..=deg {
        if p.coeff_ref(k).is_none() {
            return false;
        }
    }
    for k in (uval + 1)..deg {
        let prev = p.coeff_ref(k - 1).unwrap();
        let here = p.coeff_ref(k).unwrap();
        let next = p.coeff_ref(k + 1).unwrap();
        if here.clone() + here.clone() < prev.clone() + next.clone() {
            return false;
        }
    }
    true
}

/// Coefficient-wise maximum.
pub fn t_add_poly<S: Scalar>(p: &TPolynomial<S>, q: &TPolynomial<S>) -> TPolynomial<S> {
    let mut out = p.clone();
    for (k, c) in q.terms() {
        let cur = out.coeff(k);
        out.set(k, t_add(&cur, &Fin(c.clone())));
    }
    out
}

/// Cauchy product with max-plus coefficient arithmetic.
pub fn t_mul_poly<S: Scalar>(p: &TPolynomial<S>, q: &TPolynomial<S>) -> TPolynomial<S> {
    let mut out = TPolynomial::zero();
    for (i, a) in p.terms() {
        for (j, b) in q.terms() {
            let cur = out.coeff(i + j);
            out.set(i + j, t_add(&cur, &Fin(a.clone() + b.clone())));
        }
    }
    out
}

/// Expands lead times the product of linear factors `Y + c` over the
/// given multiset of corners; a bottom corner contributes a bare `Y`.
pub fn t_linear_expand<S: Scalar>(lead: &GValue<S>, roots: &[GValue<S>]) -> TPolynomial<S> {
    let mut acc = TPolynomial::monomial(0, lead.clone());
    for c in roots {
        let factor = TPolynomial::from_terms([(1, GValue::one()), (0, c.clone())]);
        acc = t_mul_poly(&acc, &factor);
    }
    acc
}

/// Scales every coefficient by a fixed value (bottom annihilates).
pub fn t_scale_poly<S: Scalar>(p: &TPolynomial<S>, a: &GValue<S>) -> TPolynomial<S> {
    match a {
        Bot => TPolynomial::zero(),
        Fin(m) => {
            let mut out = TPolynomial::zero();
            for (k, c) in p.terms() {
                out.set(k, Fin(c.clone() + m.clone()));
            }
            out
        }
    }
}
