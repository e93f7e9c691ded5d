//! Ordinary (non-involutive) multivariate division.

use std::sync::Arc;

use super::intpoly::{reduce_with, IntPoly, ReduceMode};
use super::monomial::Monomial;
use super::polynomial::{same_ring, Polynomial, Ring};
use super::{PolyError, Rational};

fn check(f: &Polynomial, basis: &[Polynomial]) -> Result<(), PolyError> {
    for g in basis {
        if !same_ring(f.ring(), g.ring()) {
            return Err(PolyError::RingMismatch);
        }
    }
    Ok(())
}

/// Remainder of `f` on division by `basis` under the ring's order: no term
/// of the result is divisible by a leading monomial of `basis`, and
/// `f - result` lies in the ideal. Zero members of `basis` are ignored.
pub fn poly_reduce(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial, PolyError> {
    check(f, basis)?;
    let ints: Vec<IntPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(IntPoly::from_poly)
        .collect();
    Ok(reduce_int(f, &ints, f.ring()))
}

pub(crate) fn reduce_int(f: &Polynomial, basis: &[IntPoly], ring: &Arc<Ring>) -> Polynomial {
    let refs: Vec<&IntPoly> = basis.iter().collect();
    let lms: Vec<_> = basis.iter().map(|g| g.lm().unwrap().clone()).collect();
    reduce_exact(f, &refs, ring, |t| lms.iter().position(|l| l.divides(t)), ReduceMode::Full)
}

/// Fraction-free reduction of a rational polynomial, rescaled so that the
/// result is congruent to `f` itself (not merely to a multiple of it).
pub(crate) fn reduce_exact<F>(
    f: &Polynomial,
    basis: &[&IntPoly],
    ring: &Arc<Ring>,
    find: F,
    mode: ReduceMode,
) -> Polynomial
where
    F: FnMut(&Monomial) -> Option<usize>,
{
    if f.is_zero() {
        return f.clone();
    }
    let red = reduce_with(IntPoly::from_poly(f), basis, ring.order(), find, mode);
    // f was scaled to primitive form before reduction; undo both scalings.
    let fp = IntPoly::from_poly(f);
    let lead = &f.leading_coeff().unwrap().clone();
    let prim_scale = lead / Rational::from_integer(fp.lc().unwrap().clone());
    red.poly.to_poly(ring).scale(&(prim_scale / red.scale))
}

/// Quotients and remainder of textbook division, `f = sum q_i g_i + r`.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Textbook division over the rationals, reducing with the first divisor
/// in list order and moving irreducible leading terms to the remainder.
pub fn divide(f: &Polynomial, basis: &[Polynomial]) -> Result<Division, PolyError> {
    check(f, basis)?;
    let ring = f.ring();
    let mut quotients = vec![Polynomial::zero(ring); basis.len()];
    let mut remainder = Polynomial::zero(ring);
    let mut p = f.clone();
    while let Some((lm, lc)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = basis.iter().enumerate().find(|(_, g)| {
            g.leading_monomial().is_some_and(|gl| gl.divides(&lm))
        });
        match hit {
            Some((i, g)) => {
                let (gl, gc) = g.leading_term().unwrap();
                let u = gl.quotient_of(&lm).unwrap();
                let c = &lc / gc;
                quotients[i] = &quotients[i] + &Polynomial::term(ring, u.clone(), c.clone());
                p = &p - &g.mul_term(&u, &c);
            }
            None => {
                let t = Polynomial::term(ring, lm, lc);
                remainder = &remainder + &t;
                p = &p - &t;
            }
        }
    }
    Ok(Division {
        quotients,
        remainder,
    })
}
