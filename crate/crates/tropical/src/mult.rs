//! Root multiplicities for signed polynomials. The fast path reads the
//! multiplicity off the sign changes of a saturation polynomial; the
//! oracle path evaluates the recursive definition (one plus the best
//! multiplicity among balanced quotients) exhaustively over the finite
//! signed Boolean subsemiring, which the saturation reduction makes
//! possible for the full signed semiring as well.

use std::collections::HashMap;


use crate::spoly::{
    function_eq, s_compose_scale, s_eval, s_mul_poly, sharp_representative, Factorization,
    SPolynomial,
};
use crate::system::{balance, s_add, s_div, s_neg, s_pow, El, SValue, Sign, Zero};
use crate::tmax::Fin;
use crate::tpoly::{self, t_eval};
use crate::{Error, Result, Scalar};

/// Exhaustive-recursion degree bound; quotient enumeration is
/// exponential, so larger inputs are rejected with a capacity error.
pub const ORACLE_DEGREE_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultPath {
    ZeroRoot,
    SignChange,
    RecursiveOracle,
}

impl MultPath {
    pub fn tag(self) -> &'static str {
        match self {
            MultPath::ZeroRoot => "ZeroRoot",
            MultPath::SignChange => "SignChange",
            MultPath::RecursiveOracle => "RecursiveOracle",
        }
    }
}

/// A multiplicity computation together with the evidence used: the
/// saturation set and polynomial, and which path produced the count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultReport<S> {
    pub root: SValue<S>,
    pub mult: usize,
    pub sat_set: Vec<usize>,
    pub sat_poly: SPolynomial<S>,
    pub path: MultPath,
}

fn require_mult_input<S: Scalar>(p: &SPolynomial<S>) -> Result<()> {
    if p.is_zero() {
        return Err(Error::domain(
            "multiplicities of the zero polynomial are undefined",
        ));
    }
    if !p.all_signed() {
        return Err(Error::domain(
            "multiplicity requires signed coefficients, found a balanced one",
        ));
    }
    Ok(())
}

/// The saturation set at a finite modulus: the degrees whose monomial
/// attains the evaluation maximum of the modulus polynomial there.
pub fn sat_set<S: Scalar>(p: &SPolynomial<S>, t: &S) -> Vec<usize> {
    let modp = p.modulus();
    let m = t_eval(&modp, &Fin(t.clone()));
    let m = match m {
        Fin(v) => v,
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for (i, c) in p.terms() {
        let mag = c.mag().expect("nonzero coefficient");
        let i_s = S::from_usize(i).expect("degree fits the scalar");
        if mag.clone() + i_s * t.clone() == m {
            out.push(i);
        }
    }
    out
}

/// The saturation polynomial for a tangible root: unit-magnitude
/// coefficients on the saturation set. With `fold_sign` the root's sign
/// is powered into each coefficient (the normalized form whose plain
/// sign changes give the multiplicity); without it the coefficients keep
/// the original signs and the root is replaced by its sign alone.
fn sat_polynomial<S: Scalar>(
    p: &SPolynomial<S>,
    root_sign: Sign,
    t: &S,
    fold_sign: bool,
) -> (Vec<usize>, SPolynomial<S>) {
    let sat = sat_set(p, t);
    let mut q = SPolynomial::zero();
    for &i in &sat {
        let base = p.coeff(i).sign().expect("saturated coefficient is nonzero");
        let s = if fold_sign {
            // sign of r^i * P_i
            match root_sign.pow(i) {
                Sign::Pos => base,
                Sign::Neg => base.neg(),
                Sign::Bal => Sign::Bal,
            }
        } else {
            base
        };
        q.set(i, El(s, S::zero()));
    }
    (sat, q)
}

/// Counts sign changes across the nonzero coefficients, low degree to
/// high, skipping absent terms. Requires unit-magnitude signed
/// coefficients.
pub fn sign_changes<S: Scalar>(q: &SPolynomial<S>) -> Result<usize> {
    let mut last: Option<Sign> = None;
    let mut changes = 0;
    for (_, c) in q.terms() {
        match c {
            El(s @ (Sign::Pos | Sign::Neg), m) if m.is_zero() => {
                if let Some(prev) = last {
                    if prev != *s {
                        changes += 1;
                    }
                }
                last = Some(*s);
            }
            El(_, m) if !m.is_zero() => {
                return Err(Error::domain(
                    "sign changes require magnitude-zero coefficients",
                ))
            }
            _ => {
                return Err(Error::domain(
                    "sign changes require signed unit coefficients",
                ))
            }
        }
    }
    Ok(changes)
}

/// Multiplicity of a signed root by the fast path: the lower degree for
/// the zero root, otherwise the sign changes of the folded saturation
/// polynomial.
pub fn mult<S: Scalar>(p: &SPolynomial<S>, r: &SValue<S>) -> Result<MultReport<S>> {
    require_mult_input(p)?;
    match r {
        Zero => Ok(MultReport {
            root: Zero,
            mult: p.uval().unwrap(),
            sat_set: Vec::new(),
            sat_poly: SPolynomial::zero(),
            path: MultPath::ZeroRoot,
        }),
        El(Sign::Bal, _) => Err(Error::domain("multiplicity requires a signed root")),
        El(s, t) => {
            let (sat, q) = sat_polynomial(p, *s, t, true);
            let changes = sign_changes(&q)?;
            Ok(MultReport {
                root: r.clone(),
                mult: changes,
                sat_set: sat,
                sat_poly: q,
                path: MultPath::SignChange,
            })
        }
    }
}

/// Does `P` balance `(Y - r) * Q` coefficient-wise?
pub fn divides_balanced<S: Scalar>(
    p: &SPolynomial<S>,
    r: &SValue<S>,
    q: &SPolynomial<S>,
) -> bool {
    let factor = SPolynomial::from_terms([(0, s_neg(r)), (1, SValue::one())]);
    let prod = s_mul_poly(&factor, q);
    let n = p.deg().unwrap_or(0).max(prod.deg().unwrap_or(0));
    (0..=n).all(|k| balance(&p.coeff(k), &prod.coeff(k)))
}

/// A constructive division witness for a root: a multiplier and an
/// all-signed quotient with `lambda * P` balancing `(Y - r) * Q`
/// coefficient-wise and the quotient's leading coefficient equal to the
/// dividend's. The multiplier is normalized to one. For a tangible root
/// the problem is rescaled so the root becomes the unit, the quotient is
/// built top down (each coefficient must balance both the running prefix
/// sum of the dividend and the running suffix of the product), and
/// rescaled back; ties where both constraints are balanced resolve to a
/// positive coefficient of maximal modulus.
pub fn divide_witness<S: Scalar>(
    p: &SPolynomial<S>,
    r: &SValue<S>,
) -> Result<(SValue<S>, SPolynomial<S>)> {
    if p.is_zero() {
        return Err(Error::domain("division of the zero polynomial is undefined"));
    }
    if !p.all_signed() {
        return Err(Error::domain(
            "division requires signed coefficients, found a balanced one",
        ));
    }
    let n = p.deg().unwrap();
    let quotient = match r {
        Zero => {
            if p.uval().unwrap() == 0 {
                return Err(Error::domain("the value is not a root of the polynomial"));
            }
            SPolynomial::from_terms(p.terms().map(|(k, c)| (k - 1, c.clone())))
        }
        El(Sign::Bal, _) => return Err(Error::domain("division requires a signed root")),
        El(_, _) => {
            if !s_eval(p, r).is_bal_or_zero() {
                return Err(Error::domain("the value is not a root of the polynomial"));
            }
            let sub = s_compose_scale(p, r);
            let mut prefix = Vec::with_capacity(n);
            let mut acc = Zero;
            for k in 0..n {
                acc = s_add(&acc, &sub.coeff(k));
                prefix.push(acc.clone());
            }
            let mut qp = vec![Zero; n];
            qp[n - 1] = sub.coeff(n);
            for k in (0..n - 1).rev() {
                let s_k = &prefix[k];
                let t_k = s_add(&sub.coeff(k + 1), &qp[k + 1]);
                qp[k] = if s_k.is_signed() {
                    s_neg(s_k)
                } else if t_k.is_signed() {
                    t_k
                } else {
                    match (s_k.mag(), t_k.mag()) {
                        (Some(a), Some(b)) => El(Sign::Pos, a.clone().min(b.clone())),
                        _ => Zero,
                    }
                };
            }
            let mut q = SPolynomial::zero();
            for (k, c) in qp.into_iter().enumerate() {
                if c != Zero {
                    q.set(k, s_div(&c, &s_pow(r, k + 1))?);
                }
            }
            q
        }
    };
    debug_assert_eq!(quotient.coeff(n - 1), p.coeff(n));
    debug_assert!(divides_balanced(p, r, &quotient));
    Ok((SValue::one(), quotient))
}

// digit encoding over the signed Boolean subsemiring: 0 zero, 1 plus
// unit, 2 minus unit, 3 balanced unit
fn d_neg(a: u8) -> u8 {
    match a {
        1 => 2,
        2 => 1,
        x => x,
    }
}

fn d_add(a: u8, b: u8) -> u8 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        (3, _) | (_, 3) => 3,
        (x, y) if x == y => x,
        _ => 3,
    }
}

fn d_mul(a: u8, b: u8) -> u8 {
    match (a, b) {
        (0, _) | (_, 0) => 0,
        (3, _) | (_, 3) => 3,
        (x, y) if x == y => 1,
        _ => 2,
    }
}

fn d_balance(a: u8, b: u8) -> bool {
    matches!(d_add(a, d_neg(b)), 0 | 3)
}

fn encode(digits: &[u8]) -> u64 {
    let mut code: u64 = 0;
    for &d in digits.iter().rev() {
        code = code * 3 + d as u64;
    }
    code
}

/// Memoized exhaustive evaluator of the recursive multiplicity over the
/// signed Boolean subsemiring. Polynomials are digit vectors indexed by
/// degree (0 zero, 1 plus, 2 minus), roots are single digits with 0 for
/// the zero root. A single instance shares its memo across queries.
pub struct BsOracle {
    memo: HashMap<(u64, u8), u8>,
}

impl Default for BsOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl BsOracle {
    pub fn new() -> Self {
        BsOracle {
            memo: HashMap::new(),
        }
    }

    /// The recursive multiplicity of `a` in the polynomial given by
    /// `digits`. Zero if not a root; otherwise one plus the best
    /// multiplicity over every signed quotient of degree one less whose
    /// product with the linear factor balances a scalar multiple of the
    /// polynomial.
    pub fn mult_digits(&mut self, digits: &[u8], a: u8) -> usize {
        debug_assert!(digits.last().is_some_and(|&d| d != 0));
        debug_assert!(a <= 2);
        let key = (encode(digits), a);
        if let Some(&v) = self.memo.get(&key) {
            return v as usize;
        }
        let v = self.mult_uncached(digits, a);
        self.memo.insert(key, v as u8);
        v
    }

    fn mult_uncached(&mut self, digits: &[u8], a: u8) -> usize {
        let n = digits.len() - 1;
        if a == 0 {
            // the balance forces the quotient to be the shifted
            // polynomial, scaled; recurse on it
            if digits[0] != 0 || n == 0 {
                return 0;
            }
            return 1 + self.mult_digits(&digits[1..], 0);
        }
        // root test: evaluation at the signed unit must be balanced
        let mut val = 0u8;
        let mut apow = 1u8;
        for &d in digits {
            val = d_add(val, d_mul(d, apow));
            apow = d_mul(apow, a);
        }
        if !matches!(val, 0 | 3) {
            return 0;
        }
        debug_assert!(n >= 1, "a constant cannot have a root");
        let mut best = 0usize;
        let free = n - 1;
        let mut q = vec![0u8; n];
        for lambda in [1u8, 2u8] {
            q[n - 1] = d_mul(lambda, digits[n]);
            let mut counter = vec![0u8; free];
            loop {
                for (i, &c) in counter.iter().enumerate() {
                    q[i] = c;
                }
                if Self::balances(digits, lambda, &q, a) {
                    let m = self.mult_digits(&q, a);
                    if m + 1 > best {
                        best = m + 1;
                    }
                }
                // odometer over the free quotient digits
                let mut i = 0;
                loop {
                    if i == free {
                        break;
                    }
                    if counter[i] < 2 {
                        counter[i] += 1;
                        break;
                    }
                    counter[i] = 0;
                    i += 1;
                }
                if i == free {
                    break;
                }
            }
        }
        debug_assert!(best >= 1, "a root admits at least one quotient");
        best
    }

    /// Does lambda * P balance (Y - a) * Q coefficient-wise?
    fn balances(p: &[u8], lambda: u8, q: &[u8], a: u8) -> bool {
        let n = p.len() - 1;
        let na = d_neg(a);
        for k in 0..=n {
            let below = if k > 0 { q[k - 1] } else { 0 };
            let here = if k < n { d_mul(na, q[k]) } else { 0 };
            if !d_balance(d_mul(lambda, p[k]), d_add(below, here)) {
                return false;
            }
        }
        true
    }
}

/// Converts a polynomial with unit-magnitude signed coefficients into
/// oracle digits indexed by degree.
pub fn bs_digits<S: Scalar>(q: &SPolynomial<S>) -> Result<Vec<u8>> {
    let Some(deg) = q.deg() else {
        return Err(Error::domain("the zero polynomial has no digit form"));
    };
    let mut digits = vec![0u8; deg + 1];
    for (k, c) in q.terms() {
        match c {
            El(Sign::Pos, m) if m.is_zero() => digits[k] = 1,
            El(Sign::Neg, m) if m.is_zero() => digits[k] = 2,
            _ => {
                return Err(Error::domain(
                    "oracle polynomials need signed unit coefficients",
                ))
            }
        }
    }
    Ok(digits)
}

fn bs_root_digit<S: Scalar>(a: &SValue<S>) -> Result<u8> {
    match a {
        Zero => Ok(0),
        El(Sign::Pos, m) if m.is_zero() => Ok(1),
        El(Sign::Neg, m) if m.is_zero() => Ok(2),
        _ => Err(Error::domain(
            "oracle roots must be zero or a signed unit",
        )),
    }
}

/// Exhaustive recursive multiplicity over the signed Boolean
/// subsemiring; the independent oracle for the sign-change formula.
pub fn mult_recursive_bs<S: Scalar>(q: &SPolynomial<S>, a: &SValue<S>) -> Result<usize> {
    let digits = bs_digits(q)?;
    let root = bs_root_digit(a)?;
    if digits.len() - 1 > ORACLE_DEGREE_CAP {
        return Err(Error::capacity(format!(
            "oracle degree cap is {ORACLE_DEGREE_CAP}, polynomial has degree {}",
            digits.len() - 1
        )));
    }
    Ok(BsOracle::new().mult_digits(&digits, root))
}

/// Oracle-path multiplicity for the signed semiring: reduce to the
/// saturation polynomial (original signs kept) and the root's sign, then
/// run the exhaustive recursion. Shares no logic with the sign-change
/// fast path beyond the saturation set itself.
pub fn mult_recursive_smax<S: Scalar>(p: &SPolynomial<S>, r: &SValue<S>) -> Result<usize> {
    require_mult_input(p)?;
    if p.deg().unwrap() > ORACLE_DEGREE_CAP {
        return Err(Error::capacity(format!(
            "oracle degree cap is {ORACLE_DEGREE_CAP}, polynomial has degree {}",
            p.deg().unwrap()
        )));
    }
    match r {
        Zero => Ok(p.uval().unwrap()),
        El(Sign::Bal, _) => Err(Error::domain("multiplicity requires a signed root")),
        El(s, t) => {
            let (_, satq) = sat_polynomial(p, *s, t, false);
            let digits = bs_digits(&satq)?;
            let root = if *s == Sign::Pos { 1 } else { 2 };
            Ok(BsOracle::new().mult_digits(&digits, root))
        }
    }
}

/// Per-corner multiplicity figures for a polynomial: the corner of the
/// modulus polynomial, its corner multiplicity, and the multiplicities
/// of the two signed roots over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerMult<S> {
    pub corner: S,
    pub corner_mult: usize,
    pub mult_pos: usize,
    pub mult_neg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultSummary<S> {
    pub total: usize,
    pub zero_mult: usize,
    pub per_corner: Vec<CornerMult<S>>,
}

/// Computes every candidate root's multiplicity and totals them. The
/// counting bounds hold structurally: per corner the two signed
/// multiplicities sum to at most the corner multiplicity, and the total
/// is at most the degree.
pub fn mult_sum_check<S: Scalar>(p: &SPolynomial<S>) -> Result<MultSummary<S>> {
    require_mult_input(p)?;
    let corners = tpoly::corners(&p.modulus())?;
    let zero_mult = p.uval().unwrap();
    let mut per_corner = Vec::new();
    let mut total = zero_mult;
    for (c, m) in corners.finite() {
        let mp = mult(p, &SValue::pos(c.clone()))?.mult;
        let mn = mult(p, &SValue::neg(c.clone()))?.mult;
        debug_assert!(mp + mn <= m);
        total += mp + mn;
        per_corner.push(CornerMult {
            corner: c,
            corner_mult: m,
            mult_pos: mp,
            mult_neg: mn,
        });
    }
    debug_assert!(total <= p.deg().unwrap());
    Ok(MultSummary {
        total,
        zero_mult,
        per_corner,
    })
}

/// The structural gap condition over every finite corner's saturation
/// set: successive saturated degrees differ by one, or by two with
/// opposite coefficient signs. Equivalent to the multiplicities summing
/// to the full degree.
pub fn gap_condition<S: Scalar>(p: &SPolynomial<S>) -> Result<bool> {
    require_mult_input(p)?;
    let corners = tpoly::corners(&p.modulus())?;
    for (c, _) in corners.finite() {
        let sat = sat_set(p, &c);
        for w in sat.windows(2) {
            let (k, l) = (w[0], w[1]);
            let ok = match l - k {
                1 => true,
                2 => {
                    let sk = p.coeff(k).sign().expect("saturated");
                    let sl = p.coeff(l).sign().expect("saturated");
                    sl == sk.neg()
                }
                _ => false,
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of reconstructing a factorization from multiplicities alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorFromMult<S> {
    Factored(FactorConclusion<S>),
    /// Multiplicities sum below the degree; this route cannot decide
    /// whether the function factors.
    CannotConclude { total: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorConclusion<S> {
    pub factorization: Factorization<S>,
    /// The structural gap condition; implied true when the total reaches
    /// the degree.
    pub gap_condition: bool,
    /// Function equality between the expanded factorization and the
    /// input, decided on the breakpoint sample set.
    pub function_equal: bool,
}

/// When the multiplicities over all candidate roots sum to the degree,
/// the multiset of roots taken with those multiplicities factors the
/// polynomial function. Reports the gap condition and a function
/// equality check alongside.
pub fn factor_from_multiplicities<S: Scalar>(p: &SPolynomial<S>) -> Result<FactorFromMult<S>> {
    let summary = mult_sum_check(p)?;
    let n = p.deg().unwrap();
    if summary.total != n {
        return Ok(FactorFromMult::CannotConclude {
            total: summary.total,
        });
    }
    let mut roots = Vec::with_capacity(n);
    for cm in &summary.per_corner {
        for _ in 0..cm.mult_pos {
            roots.push(SValue::pos(cm.corner.clone()));
        }
        for _ in 0..cm.mult_neg {
            roots.push(SValue::neg(cm.corner.clone()));
        }
    }
    roots.resize(n, Zero);
    let f = Factorization {
        lead: p.coeff(n),
        roots,
    };
    let expansion = sharp_representative(&f);
    let conclusion = FactorConclusion {
        gap_condition: gap_condition(p)?,
        function_equal: function_eq(&expansion, p),
        factorization: f,
    };
    Ok(FactorFromMult::Factored(conclusion))
}

/// Occurrence counts of each root in the unique factorization; requires
/// the uniqueness decision to succeed. These counts coincide with the
/// computed multiplicities.
pub fn mult_from_unique_factorization<S: Scalar>(
    p: &SPolynomial<S>,
) -> Result<Vec<(SValue<S>, usize)>> {
    match crate::spoly::unique_factorization(p)? {
        crate::spoly::UniqueFactorization::Unique(f) => {
            let mut out: Vec<(SValue<S>, usize)> = Vec::new();
            for r in &f.roots {
                match out.last_mut() {
                    Some((prev, count)) if prev == r => *count += 1,
                    _ => out.push((r.clone(), 1)),
                }
            }
            Ok(out)
        }
        _ => Err(Error::domain(
            "multiplicities from factorization require a unique factorization",
        )),
    }
}

/// Convenience for the oracle-comparison report surface: a report whose
/// count came from the exhaustive recursion rather than sign changes.
pub fn mult_oracle_report<S: Scalar>(p: &SPolynomial<S>, r: &SValue<S>) -> Result<MultReport<S>> {
    let m = mult_recursive_smax(p, r)?;
    let (sat, satq) = match r {
        El(s @ (Sign::Pos | Sign::Neg), t) => sat_polynomial(p, *s, t, true),
        _ => (Vec::new(), SPolynomial::zero()),
    };
    Ok(MultReport {
        root: r.clone(),
        mult: m,
        sat_set: sat,
        sat_poly: satq,
        path: if matches!(r, Zero) {
            MultPath::ZeroRoot
        } else {
            MultPath::RecursiveOracle
        },
    })
}
