use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::{MonomialOrder, OrderKind};
use super::{PolyError, Rational};

/// Variable names plus the active monomial order. Polynomials share a ring
/// through an `Arc`; two rings are compatible when names and order agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, kind: OrderKind) -> Arc<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let order = MonomialOrder::new(kind, vars.len());
        Arc::new(Ring { vars, order })
    }

    pub fn with_order(vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>, PolyError> {
        if vars.len() != order.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: vars.len(),
                found: order.nvars(),
            });
        }
        Ok(Arc::new(Ring { vars, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables under another order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<Ring>, PolyError> {
        Ring::with_order(self.vars.clone(), order)
    }
}

#[inline]
pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in strictly decreasing order under the ring's
/// monomial order, with no zero coefficients and no repeated monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn from_int(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), index), Rational::one())
    }

    /// Variable by name; panics on an unknown name.
    pub fn named(ring: &Arc<Ring>, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"));
        Self::var(ring, i)
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial outside the ring");
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms; duplicates are combined and zeros dropped.
    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut v: Vec<(Monomial, Rational)> = Vec::new();
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(PolyError::DimensionMismatch {
                    expected: ring.nvars(),
                    found: m.nvars(),
                });
            }
            v.push((m, c));
        }
        let order = ring.order();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial {
            ring: ring.clone(),
            terms: out,
        })
    }

    /// Terms that are already sorted, merged and nonzero.
    pub(crate) fn from_sorted_terms_unchecked(
        ring: &Arc<Ring>,
        terms: Vec<(Monomial, Rational)>,
    ) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        let order = self.ring.order();
        match self.terms.binary_search_by(|(t, _)| order.cmp(m, t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Maximum total degree over all terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max()
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else if self.nvars() != other.nvars() {
            Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            })
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| {
            (m.clone(), if negate_other { -c } else { c.clone() })
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                prods.push((m.mul(n), c * d));
            }
        }
        Polynomial::from_terms(&self.ring, prods)
    }

    /// `self * c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Integer coefficients with content 1 and a positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            content = content.gcd(&n);
        }
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let factor = Rational::new(den, content);
        self.scale(&factor)
    }

    /// Explicitly re-sort under another order of the same variables.
    pub fn with_order(&self, order: &MonomialOrder) -> Result<Polynomial, PolyError> {
        let ring = self.ring.reordered(order.clone())?;
        Ok(self.in_ring(&ring))
    }

    /// Re-home into a ring with identical variable list (possibly another order).
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert_eq!(ring.vars(), self.ring.vars(), "in_ring needs identical variables");
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute `images[i]` (polynomials of `target`) for variable `i`.
    pub fn compose(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        for img in images {
            if !same_ring(img.ring(), target) {
                return Err(PolyError::RingMismatch);
            }
        }
        // power caches per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|img| vec![Polynomial::one(target), img.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficients in ascending degree when the polynomial only involves
    /// variable `var`; `None` otherwise.
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<Rational>> {
        let mut deg = 0usize;
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if i != var && e > 0 {
                    return None;
                }
            }
            deg = deg.max(m.exponent(var) as usize);
        }
        let mut out = vec![Rational::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.exponent(var) as usize] = c.clone();
        }
        Some(out)
    }

    /// Univariate polynomial in `var` with the given ascending coefficients.
    pub fn from_univariate(ring: &Arc<Ring>, var: usize, coeffs: &[Rational]) -> Polynomial {
        let n = ring.nvars();
        let terms = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
            let mut e = vec![0u16; n];
            e[var] = k as u16;
            (Monomial::from_exponents(e), c.clone())
        });
        Polynomial::from_terms(ring, terms).expect("dimension is consistent")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display_with(self.ring.vars()))?;
            } else {
                write!(f, "{abs}*{}", m.display_with(self.ring.vars()))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomials from different rings")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
