//! Exact arithmetic: rationals, multivariate polynomials over ℚ, Laurent
//! polynomials over ℤ, and a Gröbner toolkit.

mod groebner;
mod laurent;
mod parse;
mod poly;
mod ring;

pub use groebner::{buchberger, reduce, Ideal};
pub use laurent::LaurentPoly;
pub use poly::MultiPoly;
pub use ring::{Monomial, MonomialOrder, PolyRing};

use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("division by zero")]
    ZeroDivisor,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
}
