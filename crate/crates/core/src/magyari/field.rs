//! Scalars for kernel reconstruction: rationals, and `a + b sqrt(d)` with
//! `d` fixed per computation.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{format_rational, Rational};

pub trait Field: Clone + PartialEq + fmt::Debug {
    fn from_rational(&self, r: Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when dividing by zero.
    fn div(&self, other: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Field for Rational {
    fn from_rational(&self, r: Rational) -> Self {
        r
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// `a + b sqrt(d)` for a fixed non-square rational `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        QuadSurd { a, b, d }
    }

    pub fn conjugate(&self) -> Self {
        QuadSurd::new(self.a.clone(), -&self.b, self.d.clone())
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * f(&self.d).sqrt()
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    fn check(&self, other: &Self) {
        assert!(self.d == other.d, "mixed radicands {} and {}", self.d, other.d);
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        let coef = if b.is_one() { String::new() } else { format!("{}*", format_rational(&b)) };
        write!(f, "{} {sign} {coef}sqrt({})", format_rational(&self.a), format_rational(&self.d))
    }
}

impl Field for QuadSurd {
    fn from_rational(&self, r: Rational) -> Self {
        QuadSurd::new(r, Rational::zero(), self.d.clone())
    }
    fn add(&self, other: &Self) -> Self {
        self.check(other);
        QuadSurd::new(&self.a + &other.a, &self.b + &other.b, self.d.clone())
    }
    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        QuadSurd::new(
            &self.a * &other.a + &self.d * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
            self.d.clone(),
        )
    }
    fn neg(&self) -> Self {
        QuadSurd::new(-&self.a, -&self.b, self.d.clone())
    }
    fn div(&self, other: &Self) -> Option<Self> {
        self.check(other);
        let n = other.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let num = self.mul(&other.conjugate());
        Some(QuadSurd::new(num.a / &n, num.b / &n, self.d.clone()))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
}
