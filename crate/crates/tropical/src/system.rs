//! The signed extension of the max-plus semiring. Elements are zero or a
//! magnitude carrying a sign tag: positive, negative, or balanced. Sums
//! are resolved by magnitude; equal magnitudes of opposite sign cancel
//! into a balanced element instead of vanishing, so the balance relation
//! `a - b` is balanced-or-zero takes over the role of equality.

use std::cmp::Ordering;


use crate::tmax::{Bot, Fin, GValue};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
    Bal,
}

impl Sign {
    pub fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
            Sign::Bal => Sign::Bal,
        }
    }

    fn join(self, other: Sign) -> Sign {
        if self == other {
            self
        } else {
            Sign::Bal
        }
    }

    fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Bal, _) | (_, Sign::Bal) => Sign::Bal,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }

    /// Sign raised to an integer power: even powers of a tangible sign are
    /// positive, balanced stays balanced.
    pub fn pow(self, k: usize) -> Sign {
        match self {
            Sign::Bal => Sign::Bal,
            Sign::Pos => Sign::Pos,
            Sign::Neg => {
                if k % 2 == 0 {
                    Sign::Pos
                } else {
                    Sign::Neg
                }
            }
        }
    }
}

/// A signed max-plus value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SValue<S> {
    Zero,
    El(Sign, S),
}

pub use SValue::{El, Zero};

impl<S: Scalar> SValue<S> {
    pub fn one() -> Self {
        El(Sign::Pos, S::zero())
    }

    pub fn minus_one() -> Self {
        El(Sign::Neg, S::zero())
    }

    pub fn bal_one() -> Self {
        El(Sign::Bal, S::zero())
    }

    pub fn pos(m: S) -> Self {
        El(Sign::Pos, m)
    }

    pub fn neg(m: S) -> Self {
        El(Sign::Neg, m)
    }

    pub fn bal(m: S) -> Self {
        El(Sign::Bal, m)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Zero)
    }

    /// Zero or carrying a determinate sign: member of the signed part.
    pub fn is_signed(&self) -> bool {
        !matches!(self, El(Sign::Bal, _))
    }

    /// Nonzero and signed: member of the tangible part.
    pub fn is_tangible(&self) -> bool {
        matches!(self, El(Sign::Pos, _) | El(Sign::Neg, _))
    }

    /// Member of the balanced ideal, the set playing the role of zero.
    pub fn is_bal_or_zero(&self) -> bool {
        matches!(self, Zero | El(Sign::Bal, _))
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            Zero => None,
            El(s, _) => Some(*s),
        }
    }

    pub fn mag(&self) -> Option<&S> {
        match self {
            Zero => None,
            El(_, m) => Some(m),
        }
    }
}

/// Canonical order for deterministic serialization only: zero first, then
/// by magnitude, ties by sign tag. The semantic orders live in
/// `order_natural` and `order_circ`.
impl<S: Ord> Ord for SValue<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, El(..)) => Ordering::Less,
            (El(..), Zero) => Ordering::Greater,
            (El(s1, m1), El(s2, m2)) => m1.cmp(m2).then(s1.cmp(s2)),
        }
    }
}

impl<S: Ord> PartialOrd for SValue<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Addition: the larger magnitude wins outright; equal magnitudes join
/// their signs, so opposite tangible signs produce a balanced element.
pub fn s_add<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> SValue<S> {
    match (a, b) {
        (Zero, x) | (x, Zero) => x.clone(),
        (El(sa, ma), El(sb, mb)) => match ma.cmp(mb) {
            Ordering::Greater => a.clone(),
            Ordering::Less => b.clone(),
            Ordering::Equal => El(sa.join(*sb), ma.clone()),
        },
    }
}

/// Multiplication: magnitudes add, signs multiply, zero is absorbing.
pub fn s_mul<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> SValue<S> {
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (El(sa, ma), El(sb, mb)) => El(sa.mul(*sb), ma.clone() + mb.clone()),
    }
}

pub fn s_neg<S: Scalar>(a: &SValue<S>) -> SValue<S> {
    match a {
        Zero => Zero,
        El(s, m) => El(s.neg(), m.clone()),
    }
}

pub fn s_sub<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> SValue<S> {
    s_add(a, &s_neg(b))
}

/// The balancing map `a + (-a)`: forgets a tangible sign into balanced.
pub fn s_bal<S: Scalar>(a: &SValue<S>) -> SValue<S> {
    match a {
        Zero => Zero,
        El(_, m) => El(Sign::Bal, m.clone()),
    }
}

/// Modulus: the underlying max-plus value, forgetting the sign.
pub fn s_mod<S: Scalar>(a: &SValue<S>) -> GValue<S> {
    match a {
        Zero => Bot,
        El(_, m) => Fin(m.clone()),
    }
}

/// Iterated multiplication; the empty product is the unit.
pub fn s_pow<S: Scalar>(a: &SValue<S>, k: usize) -> SValue<S> {
    if k == 0 {
        return SValue::one();
    }
    match a {
        Zero => Zero,
        El(s, m) => {
            let k_s = S::from_usize(k).expect("exponent fits the scalar");
            El(s.pow(k), m.clone() * k_s)
        }
    }
}

/// Exact division by a tangible element; inverts sign and magnitude.
pub fn s_div<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> Result<SValue<S>> {
    match b {
        Zero => Err(Error::domain("division by zero in the signed semiring")),
        El(Sign::Bal, _) => Err(Error::domain("division by a balanced element")),
        El(sb, mb) => Ok(match a {
            Zero => Zero,
            El(sa, ma) => El(sa.mul(*sb), ma.clone() - mb.clone()),
        }),
    }
}

/// The balance relation: `a - b` lies in the balanced ideal. This is the
/// equality surrogate of the signed semiring.
pub fn balance<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> bool {
    s_sub(a, b).is_bal_or_zero()
}

/// Natural preorder of the additive monoid: `a + b == b`.
pub fn order_natural<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> bool {
    s_add(a, b) == *b
}

/// The order `b = a + c` for some balanced-or-zero `c`. Decided directly:
/// against a balanced right side only the modulus matters, against a
/// signed right side it collapses to equality.
pub fn order_circ<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> bool {
    match b {
        El(Sign::Bal, mb) => match a {
            Zero => true,
            El(_, ma) => ma <= mb,
        },
        _ => a == b,
    }
}

/// The four-element signed Boolean subsemiring: the image of magnitude
/// zero together with zero itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BsVal {
    Zero,
    One,
    MinusOne,
    BalOne,
}

pub const BS_ALL: [BsVal; 4] = [BsVal::Zero, BsVal::One, BsVal::MinusOne, BsVal::BalOne];
pub const BS_SIGNED: [BsVal; 3] = [BsVal::Zero, BsVal::One, BsVal::MinusOne];

impl BsVal {
    pub fn to_sval<S: Scalar>(self) -> SValue<S> {
        match self {
            BsVal::Zero => Zero,
            BsVal::One => SValue::one(),
            BsVal::MinusOne => SValue::minus_one(),
            BsVal::BalOne => SValue::bal_one(),
        }
    }

    pub fn from_sign(s: Sign) -> BsVal {
        match s {
            Sign::Pos => BsVal::One,
            Sign::Neg => BsVal::MinusOne,
            Sign::Bal => BsVal::BalOne,
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            BsVal::Zero => None,
            BsVal::One => Some(Sign::Pos),
            BsVal::MinusOne => Some(Sign::Neg),
            BsVal::BalOne => Some(Sign::Bal),
        }
    }

    pub fn neg(self) -> BsVal {
        match self {
            BsVal::One => BsVal::MinusOne,
            BsVal::MinusOne => BsVal::One,
            x => x,
        }
    }

    pub fn is_signed(self) -> bool {
        self != BsVal::BalOne
    }
}

pub fn bs_add(a: BsVal, b: BsVal) -> BsVal {
    match (a.sign(), b.sign()) {
        (None, _) => b,
        (_, None) => a,
        (Some(x), Some(y)) => BsVal::from_sign(x.join(y)),
    }
}

pub fn bs_mul(a: BsVal, b: BsVal) -> BsVal {
    match (a.sign(), b.sign()) {
        (None, _) | (_, None) => BsVal::Zero,
        (Some(x), Some(y)) => BsVal::from_sign(x.mul(y)),
    }
}

/// The sign layer of a signed value: which Boolean unit it scales.
pub fn sign_part<S: Scalar>(a: &SValue<S>) -> BsVal {
    match a.sign() {
        None => BsVal::Zero,
        Some(s) => BsVal::from_sign(s),
    }
}

/// A pair (Boolean unit, max-plus level) from the layered construction.
/// Normalized so that the zero unit always rides the bottom level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layered<S> {
    pub unit: BsVal,
    pub level: GValue<S>,
}

impl<S: Scalar> Layered<S> {
    pub fn new(unit: BsVal, level: GValue<S>) -> Self {
        if unit == BsVal::Zero || level.is_bot() {
            Layered {
                unit: BsVal::Zero,
                level: Bot,
            }
        } else {
            Layered { unit, level }
        }
    }
}

/// Addition of layered pairs: the higher level wins, equal levels add
/// their units in the Boolean layer.
pub fn layered_add<S: Scalar>(a: &Layered<S>, b: &Layered<S>) -> Layered<S> {
    match a.level.cmp(&b.level) {
        Ordering::Greater => a.clone(),
        Ordering::Less => b.clone(),
        Ordering::Equal => Layered::new(bs_add(a.unit, b.unit), a.level.clone()),
    }
}

pub fn layered_mul<S: Scalar>(a: &Layered<S>, b: &Layered<S>) -> Layered<S> {
    Layered::new(
        bs_mul(a.unit, b.unit),
        crate::tmax::t_mul(&a.level, &b.level),
    )
}

/// One direction of the isomorphism with the signed semiring.
pub fn layered_embed<S: Scalar>(a: &Layered<S>) -> SValue<S> {
    match (&a.unit.sign(), &a.level) {
        (Some(s), Fin(m)) => El(*s, m.clone()),
        _ => Zero,
    }
}

/// The inverse direction: split a signed value into unit and level.
pub fn layered_project<S: Scalar>(a: &SValue<S>) -> Layered<S> {
    Layered::new(sign_part(a), s_mod(a))
}

/// Checks on the given sample pairs that embedding and projection are
/// mutually inverse and transport both operations, i.e. that the layered
/// pairs realize the signed semiring.
pub fn extend_bs<S: Scalar>(samples: &[(SValue<S>, SValue<S>)]) -> bool {
    for (a, b) in samples {
        let la = layered_project(a);
        let lb = layered_project(b);
        if layered_embed(&la) != *a || layered_embed(&lb) != *b {
            return false;
        }
        if layered_project(&layered_embed(&la)) != la {
            return false;
        }
        if layered_embed(&layered_add(&la, &lb)) != s_add(a, b) {
            return false;
        }
        if layered_embed(&layered_mul(&la, &lb)) != s_mul(a, b) {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemTag {
    Bs,
    Smax,
}

impl SystemTag {
    pub fn from_tag(s: &str) -> Result<SystemTag> {
        match s {
            "bs" | "Bs" | "BS" => Ok(SystemTag::Bs),
            "smax" | "Smax" | "SMAX" => Ok(SystemTag::Smax),
            other => Err(Error::domain(format!("unknown system tag: {other}"))),
        }
    }
}

/// The structural axioms a semiring with a balance relation must satisfy
/// for the division and multiplicity machinery to work: tangible
/// balancing, its weak form, tangible balance elimination (weak
/// transitivity), and balance cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    TB,
    WTB,
    TBE,
    BC,
}

pub const AXIOMS: [Axiom; 4] = [Axiom::TB, Axiom::WTB, Axiom::TBE, Axiom::BC];

impl Axiom {
    pub fn from_tag(s: &str) -> Result<Axiom> {
        match s {
            "TB" | "tb" => Ok(Axiom::TB),
            "WTB" | "wtb" => Ok(Axiom::WTB),
            "TBE" | "tbe" => Ok(Axiom::TBE),
            "BC" | "bc" => Ok(Axiom::BC),
            other => Err(Error::domain(format!("unknown axiom tag: {other}"))),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Axiom::TB => "TB",
            Axiom::WTB => "WTB",
            Axiom::TBE => "TBE",
            Axiom::BC => "BC",
        }
    }
}

/// Does a signed witness `w` with `a ∇ w` and `w ∇ b` exist? Any witness
/// can be replaced by `a` or `b` (when signed) or by zero, by unique
/// reduction of balances, so searching that finite set is complete.
fn tb_witness_exists<S: Scalar>(a: &SValue<S>, b: &SValue<S>) -> bool {
    let mut candidates: Vec<SValue<S>> = vec![Zero];
    if a.is_signed() {
        candidates.push(a.clone());
    }
    if b.is_signed() {
        candidates.push(b.clone());
    }
    candidates
        .iter()
        .any(|w| balance(a, w) && balance(w, b))
}

fn axiom_holds<S: Scalar>(axiom: Axiom, t: &(SValue<S>, SValue<S>, SValue<S>)) -> bool {
    let (a, b, c) = t;
    match axiom {
        // weak tangible balancing: some signed element balances a
        Axiom::WTB => {
            let mut candidates: Vec<SValue<S>> = vec![Zero, a.clone()];
            if let El(_, m) = a {
                candidates.push(SValue::pos(m.clone()));
                candidates.push(SValue::neg(m.clone()));
            }
            candidates
                .iter()
                .any(|w| w.is_signed() && balance(w, a))
        }
        // tangible balancing: a ∇ b admits a signed midpoint
        Axiom::TB => !balance(a, b) || tb_witness_exists(a, b),
        // balance elimination through a signed middle term
        Axiom::TBE => !(b.is_signed() && balance(a, b) && balance(b, c)) || balance(a, c),
        // cancellation of a tangible factor across a balance
        Axiom::BC => {
            !(a.is_tangible() && balance(&s_mul(a, b), &s_mul(a, c))) || balance(b, c)
        }
    }
}

fn bs_triples<S: Scalar>() -> Vec<(SValue<S>, SValue<S>, SValue<S>)> {
    let mut out = Vec::with_capacity(64);
    for a in BS_ALL {
        for b in BS_ALL {
            for c in BS_ALL {
                out.push((a.to_sval(), b.to_sval(), c.to_sval()));
            }
        }
    }
    out
}

/// Checks one axiom over a system. The finite Boolean system is checked
/// exhaustively regardless of the samples; the signed max-plus system is
/// checked on the supplied sample triples plus the embedded finite core.
pub fn axiom_check<S: Scalar>(
    system: SystemTag,
    axiom: Axiom,
    samples: &[(SValue<S>, SValue<S>, SValue<S>)],
) -> bool {
    let core = bs_triples::<S>();
    let it: Box<dyn Iterator<Item = &(SValue<S>, SValue<S>, SValue<S>)>> = match system {
        SystemTag::Bs => Box::new(core.iter()),
        SystemTag::Smax => Box::new(core.iter().chain(samples.iter())),
    };
    for t in it {
        if !axiom_holds(axiom, t) {
            return false;
        }
    }
    true
}
