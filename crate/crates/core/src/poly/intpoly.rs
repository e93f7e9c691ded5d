//! Primitive integer polynomials: the working representation of the basis
//! engines. A rational polynomial only matters up to a nonzero scalar while
//! it generates an ideal, so the engines clear denominators once and run
//! fraction-free reductions on integer coefficients.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::{Polynomial, Ring};
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub(crate) terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { terms: Vec::new() }
    }

    /// Primitive integer multiple of `p` with positive leading coefficient.
    pub fn from_poly(p: &Polynomial) -> Self {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut ip = IntPoly {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
                .collect(),
        };
        ip.make_primitive();
        ip
    }

    /// Terms must already be sorted decreasingly under the intended order.
    pub fn from_sorted_terms(terms: Vec<(Monomial, BigInt)>) -> Self {
        IntPoly { terms }
    }

    pub fn to_poly(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_sorted_terms_unchecked(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone())))
                .collect(),
        )
    }

    pub fn to_monic_poly(&self, ring: &Arc<Ring>) -> Polynomial {
        let Some(lc) = self.lc() else {
            return Polynomial::zero(ring);
        };
        Polynomial::from_sorted_terms_unchecked(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::new(c.clone(), lc.clone())))
                .collect(),
        )
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    #[inline]
    pub fn lc(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    /// Divide out the content and fix the sign of the leading coefficient.
    /// Returns the signed divisor `d` with `old = d * new`.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c /= &g;
            }
        }
        g
    }

    /// Multiplication by a variable keeps the term order (admissibility).
    pub fn mul_var(&self, var: usize) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul_var(var), c.clone()))
                .collect(),
        }
    }

    /// `self <- a*self - b*u*g`, where the subtraction starts at or after
    /// term index `from` (every term of `u*g` is `<=` the term at `from`).
    pub(crate) fn sub_mul_from(
        &mut self,
        from: usize,
        a: &BigInt,
        b: &BigInt,
        u: &Monomial,
        g: &IntPoly,
        order: &MonomialOrder,
    ) {
        let old = std::mem::take(&mut self.terms);
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(old.len() + g.len());
        let scale_a = !a.is_one();
        let mut it = old.into_iter();
        for _ in 0..from {
            let (m, mut c) = it.next().expect("prefix within bounds");
            if scale_a {
                c *= a;
            }
            out.push((m, c));
        }
        let rest: Vec<(Monomial, BigInt)> = it.collect();
        let mut i = 0;
        let mut j = 0;
        let mut gm: Option<Monomial> = g.terms.first().map(|(m, _)| m.mul(u));
        while i < rest.len() || gm.is_some() {
            let ord = match (&gm, rest.get(i)) {
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
                (Some(m), Some((hm, _))) => order.cmp(hm, m),
            };
            match ord {
                Ordering::Greater => {
                    let (m, c) = &rest[i];
                    out.push((m.clone(), if scale_a { c * a } else { c.clone() }));
                    i += 1;
                }
                Ordering::Less => {
                    let c = -(b * &g.terms[j].1);
                    out.push((gm.take().unwrap(), c));
                    j += 1;
                    gm = g.terms.get(j).map(|(m, _)| m.mul(u));
                }
                Ordering::Equal => {
                    let (m, c) = &rest[i];
                    let mut c = if scale_a { c * a } else { c.clone() };
                    c -= b * &g.terms[j].1;
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    gm = g.terms.get(j).map(|(m, _)| m.mul(u));
                }
            }
        }
        self.terms = out;
    }

    /// Total number of bits over all coefficients; a cheap growth gauge.
    pub fn coefficient_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).sum()
    }
}

/// How far a reduction goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ReduceMode {
    /// Only the leading term, until it is irreducible.
    Head,
    /// Every term.
    Full,
}

pub(crate) struct Reduced {
    pub poly: IntPoly,
    /// `poly = scale * f + (ideal combination)`.
    pub scale: Rational,
    pub steps: usize,
}

/// One elementary move of [`reduce_with`], reported to an observer.
pub(crate) enum Step<'a> {
    /// `h <- a*h - b*u*basis[by]`.
    Reduce {
        a: &'a BigInt,
        b: &'a BigInt,
        u: &'a Monomial,
        by: usize,
    },
    /// `h <- h / d`.
    Divide(&'a BigInt),
}

const CONTENT_EVERY: usize = 12;

/// Fraction-free reduction of `h` by `basis`, with `find` choosing the
/// reducer (by index) for a monomial, or `None` when it is irreducible.
pub(crate) fn reduce_with<F>(
    h: IntPoly,
    basis: &[&IntPoly],
    order: &MonomialOrder,
    find: F,
    mode: ReduceMode,
) -> Reduced
where
    F: FnMut(&Monomial) -> Option<usize>,
{
    reduce_observed(h, basis, order, find, mode, &mut |_| {})
}

/// [`reduce_with`] reporting every step, for cofactor tracing.
pub(crate) fn reduce_observed<F>(
    mut h: IntPoly,
    basis: &[&IntPoly],
    order: &MonomialOrder,
    mut find: F,
    mode: ReduceMode,
    observer: &mut dyn FnMut(Step<'_>),
) -> Reduced
where
    F: FnMut(&Monomial) -> Option<usize>,
{
    let mut scale = Rational::one();
    let mut steps = 0usize;
    let mut pos = 0usize;
    while pos < h.terms.len() {
        let t = &h.terms[pos].0;
        let Some(j) = find(t) else {
            if mode == ReduceMode::Head {
                break;
            }
            pos += 1;
            continue;
        };
        let g = basis[j];
        let (gl, gc) = (&g.terms[0].0, &g.terms[0].1);
        let u = gl.quotient_of(t).expect("reducer must divide the term");
        let c = &h.terms[pos].1;
        let common = c.gcd(gc);
        let mut a = gc / &common;
        let mut b = c / &common;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        h.sub_mul_from(pos, &a, &b, &u, g, order);
        observer(Step::Reduce {
            a: &a,
            b: &b,
            u: &u,
            by: j,
        });
        if !a.is_one() {
            scale *= Rational::from_integer(a);
        }
        steps += 1;
        if steps % CONTENT_EVERY == 0 {
            let d = h.make_primitive();
            if !d.is_one() {
                observer(Step::Divide(&d));
                scale /= Rational::from_integer(d);
            }
        }
    }
    let d = h.make_primitive();
    if !d.is_one() {
        observer(Step::Divide(&d));
        scale /= Rational::from_integer(d);
    }
    Reduced {
        poly: h,
        scale,
        steps,
    }
}
