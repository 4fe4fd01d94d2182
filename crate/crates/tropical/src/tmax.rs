//! The max-plus semiring with a bottom element adjoined: addition is max,
//! multiplication is ordinary addition of magnitudes, bottom is absorbing.


use crate::{Error, Result, Scalar};

/// A max-plus value: either the bottom element (the semiring zero, neutral
/// for max and absorbing for plus) or a finite magnitude.
///
/// The derived order puts `Bot` below every `Fin`, which is exactly the
/// natural order of the semiring, so `Ord` doubles as the semantic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GValue<S> {
    Bot,
    Fin(S),
}

pub use GValue::{Bot, Fin};

impl<S: Scalar> GValue<S> {
    /// The multiplicative unit: finite magnitude zero.
    pub fn one() -> Self {
        Fin(S::zero())
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, Bot)
    }

    pub fn fin(&self) -> Option<&S> {
        match self {
            Bot => None,
            Fin(m) => Some(m),
        }
    }

    /// Finite magnitude or a domain error naming the operation that needed it.
    pub fn expect_fin(&self, what: &str) -> Result<&S> {
        self.fin()
            .ok_or_else(|| Error::domain(format!("{what} requires a finite value")))
    }
}

/// Semiring addition: maximum in the natural order.
pub fn t_add<S: Scalar>(a: &GValue<S>, b: &GValue<S>) -> GValue<S> {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Semiring multiplication: addition of magnitudes, bottom absorbing.
pub fn t_mul<S: Scalar>(a: &GValue<S>, b: &GValue<S>) -> GValue<S> {
    match (a, b) {
        (Fin(x), Fin(y)) => Fin(x.clone() + y.clone()),
        _ => Bot,
    }
}

/// Iterated multiplication. The empty product is the unit, so raising
/// bottom to the zeroth power yields finite zero.
pub fn t_pow<S: Scalar>(a: &GValue<S>, k: usize) -> GValue<S> {
    if k == 0 {
        return GValue::one();
    }
    match a {
        Bot => Bot,
        Fin(m) => {
            let k = S::from_usize(k).expect("exponent fits the scalar");
            Fin(m.clone() * k)
        }
    }
}

/// Division: subtraction of magnitudes. Dividing by bottom is undefined.
pub fn t_div<S: Scalar>(a: &GValue<S>, b: &GValue<S>) -> Result<GValue<S>> {
    match (a, b) {
        (_, Bot) => Err(Error::domain("division by tropical zero")),
        (Bot, Fin(_)) => Ok(Bot),
        (Fin(x), Fin(y)) => Ok(Fin(x.clone() - y.clone())),
    }
}

/// Multiplication by an integer in the scalar's image, used when scaling
/// exponents: `Fin(m)` raised to a rational power `q` has magnitude `m * q`.
pub fn t_scale<S: Scalar>(a: &GValue<S>, q: &S) -> GValue<S> {
    match a {
        Bot => {
            if q.is_zero() {
                GValue::one()
            } else {
                Bot
            }
        }
        Fin(m) => Fin(m.clone() * q.clone()),
    }
}
