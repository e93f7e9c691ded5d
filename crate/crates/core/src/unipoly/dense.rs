//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{format_rational, Polynomial, Rational};

/// Coefficients ascending by degree; the zero polynomial has none.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: String,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>, var: impl Into<String>) -> Self {
        let mut p = UniPoly { coeffs, var: var.into() };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64], var: impl Into<String>) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), var)
    }

    pub fn from_bigints(coeffs: &[BigInt], var: impl Into<String>) -> Self {
        UniPoly::new(coeffs.iter().cloned().map(Rational::from_integer).collect(), var)
    }

    pub fn zero(var: impl Into<String>) -> Self {
        UniPoly::new(Vec::new(), var)
    }

    pub fn constant(c: Rational, var: impl Into<String>) -> Self {
        UniPoly::new(vec![c], var)
    }

    /// `x - r`.
    pub fn linear(r: &Rational, var: impl Into<String>) -> Self {
        UniPoly::new(vec![-r, Rational::one()], var)
    }

    /// The univariate polynomial in `var` carried by `p`, if `p` uses no
    /// other variable.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Option<Self> {
        let coeffs = p.univariate_coeffs(var)?;
        Some(UniPoly::new(coeffs, p.ring().vars()[var].clone()))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect();
        UniPoly::new(coeffs, self.var.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect(), self.var.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(), self.var.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var.clone());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out, self.var.clone())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.var.clone()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot, self.var.clone()), UniPoly::new(rem, self.var.clone()))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => self.clone(),
        }
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        UniPoly::from_bigints(&self.integer_coeffs(), self.var.clone())
    }

    /// The primitive integer form as integers.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        for x in ints.iter_mut() {
            *x /= &g;
        }
        ints
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exponents with nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// `x^k`-free part and `k`.
    pub fn strip_zero_root(&self) -> (Self, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (UniPoly::new(self.coeffs[k..].to_vec(), self.var.clone()), k)
    }
}

impl fmt::Display for UniPoly {
    /// Descending degree, e.g. `s^6 - 7*s^3 - 8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{i}", self.var),
            };
            match (a.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{}", format_rational(&a))?,
                (false, false) => write!(f, "{}*{mono}", format_rational(&a))?,
            }
        }
        Ok(())
    }
}

/// Serialized form: ascending coefficient strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniPolyJson {
    pub var: String,
    pub coeffs: Vec<String>,
}

impl From<&UniPoly> for UniPolyJson {
    fn from(p: &UniPoly) -> Self {
        UniPolyJson {
            var: p.var.clone(),
            coeffs: p.coeffs.iter().map(format_rational).collect(),
        }
    }
}

impl UniPolyJson {
    pub fn to_poly(&self) -> Result<UniPoly, crate::poly::PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| crate::poly::parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(coeffs, self.var.clone()))
    }
}
