//! Exact sparse multivariate polynomials over the rationals.

pub mod intpoly;
pub mod json;
pub mod monomial;
pub mod order;
pub mod polynomial;
pub mod reduce;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use intpoly::IntPoly;
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{Polynomial, Ring};
pub use reduce::{divide, poly_reduce, Division};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Decimal string form: `n` for integers, `n/d` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`format_rational`]; also accepts an explicit `/1`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(PolyError::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
    }
}
