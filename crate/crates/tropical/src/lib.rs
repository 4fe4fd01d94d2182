//! Exact algebra over the max-plus semiring and its signed extension:
//! corner computation, concave hulls, polynomial factorization, root
//! multiplicities, and a classical verification harness over Puiseux
//! series with rational exponents.

pub mod json;
pub mod mult;
pub mod puiseux;
pub mod sample;
pub mod spoly;
pub mod sturm;
pub mod system;
pub mod text;
pub mod tmax;
pub mod tpoly;

use std::fmt;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// Exact scalar used for magnitudes and exponents. Satisfied by the
/// arbitrary-precision rationals the crate-level aliases pin, and by any
/// other exact ordered numeric type. Floats do not qualify: they are not
/// totally ordered and the algorithms here rely on exact comparison.
pub trait Scalar: Clone + Ord + Num + Signed + FromPrimitive + Hash + fmt::Debug {}

impl<T> Scalar for T where T: Clone + Ord + Num + Signed + FromPrimitive + Hash + fmt::Debug {}

/// Exact rational scalar used throughout the concrete aliases.
pub type Rat = BigRational;

/// Max-plus value with the bottom element adjoined.
pub type GVal = tmax::GValue<Rat>;

/// Signed max-plus value (zero, or a signed/balanced magnitude).
pub type SVal = system::SValue<Rat>;

/// Sparse max-plus polynomial in one variable.
pub type TPoly = tpoly::TPolynomial<Rat>;

/// Sparse signed max-plus polynomial in one variable.
pub type SPoly = spoly::SPolynomial<Rat>;

/// Finite Puiseux series: rational coefficients, rational exponents.
pub type PSeries = puiseux::PuiseuxSeries;

/// Dense polynomial over Puiseux series.
pub type FPoly = puiseux::FPolynomial;

/// Dense polynomial with rational coefficients.
pub type RatPoly = sturm::RatPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text or JSON.
    Parse(String),
    /// Input outside an operation's domain.
    Domain(String),
    /// A configured search or recursion bound was exceeded.
    Capacity(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Error {
        Error::Parse(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Error {
        Error::Capacity(msg.into())
    }

    /// Stable lowercase tag, used by the command-line surface.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Domain(_) => "domain",
            Error::Capacity(_) => "capacity",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Error::Parse(m) | Error::Domain(m) | Error::Capacity(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Parses an exact rational from text like `3`, `-1`, or `5/2`.
/// Convenience for tests and builders; returns a parse error otherwise.
pub fn rat(s: &str) -> Result<Rat> {
    text::parse_rat(s)
}
