//! Solution points above one root of the secular polynomial, found by
//! back-substitution through the lex basis and completed by the kernel.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::fglm::LexBasis;
use crate::magyari::{kernel_vector, rational_sqrt, Field, MagyariSystem, QuadSurd};
use crate::poly::{format_rational, Polynomial, Rational};
use crate::unipoly::{bounded_quadratic_factors, rational_roots, UniPoly, DEFAULT_QUADRATIC_BOUND};

/// Scalars we can find roots in.
pub trait FiberField: Field {
    /// Distinct roots of `f` (ascending coefficients) lying in the field.
    fn roots_in_field(f: &[Self]) -> Vec<Self>;
    fn show(&self) -> String;
    fn approx(&self) -> f64;
}

impl FiberField for Rational {
    fn roots_in_field(f: &[Self]) -> Vec<Self> {
        let p = UniPoly::new(f.to_vec(), "x");
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        rational_roots(&p).into_iter().map(|(r, _)| r).collect()
    }
    fn show(&self) -> String {
        format_rational(self)
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl FiberField for QuadSurd {
    fn roots_in_field(f: &[Self]) -> Vec<Self> {
        let Some(unit) = f.first() else { return Vec::new() };
        let deg = f.len() - 1;
        if deg == 0 {
            return Vec::new();
        }
        if deg == 1 {
            return vec![f[0].neg().div(&f[1]).expect("nonzero leading coefficient")];
        }
        // roots in Q(sqrt d) are roots of the rational norm f * conj(f)
        let conj: Vec<QuadSurd> = f.iter().map(QuadSurd::conjugate).collect();
        let norm = UniPoly::new(poly_mul(f, &conj).into_iter().map(|c| c.a).collect(), "x");
        let eval = |x: &QuadSurd| horner(f, x).is_zero();
        let mut out: Vec<QuadSurd> = Vec::new();
        let mut push = |x: QuadSurd| {
            if eval(&x) && !out.contains(&x) {
                out.push(x);
            }
        };
        for (r, _) in rational_roots(&norm) {
            push(unit.from_rational(r));
        }
        let split = bounded_quadratic_factors(&norm, DEFAULT_QUADRATIC_BOUND);
        let half = Rational::new(1.into(), 2.into());
        for (quad, _) in split.factors {
            let disc = Rational::from_integer(quad.discriminant().into());
            if let Some(c) = rational_sqrt(&(disc / &unit.d)) {
                for sign in [-1i64, 1] {
                    let a = -Rational::from_integer(quad.a.into()) * &half;
                    let b = &c * &half * Rational::from_integer(sign.into());
                    push(QuadSurd::new(a, b, unit.d.clone()));
                }
            }
        }
        out
    }
    fn show(&self) -> String {
        self.to_string()
    }
    fn approx(&self) -> f64 {
        self.to_f64()
    }
}

fn horner<F: Field>(f: &[F], x: &F) -> F {
    let mut acc = x.from_rational(Rational::zero());
    for c in f.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

fn poly_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let zero = a[0].from_rational(Rational::zero());
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn trim<F: Field>(mut v: Vec<F>) -> Vec<F> {
    while v.last().is_some_and(Field::is_zero) {
        v.pop();
    }
    v
}

/// Remainder of `a` by `b` over the field; `b` trimmed and nonzero.
fn poly_rem<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().div(lead).expect("nonzero lead");
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = r[k + i].sub(&c.mul(bc));
        }
        r.pop();
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_gcd<F: Field>(a: Vec<F>, b: Vec<F>) -> Vec<F> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        a = a.iter().map(|c| c.div(&l).unwrap()).collect();
    }
    a
}

/// `p` with the assigned variables substituted, as a univariate in `x`.
/// `None` when `p` involves an unassigned variable other than `x`.
fn specialize<F: Field>(p: &Polynomial, assigned: &HashMap<usize, F>, x: usize, unit: &F) -> Option<Vec<F>> {
    let zero = unit.from_rational(Rational::zero());
    let mut out: Vec<F> = Vec::new();
    for (m, c) in p.terms() {
        let mut v = unit.from_rational(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 || i == x {
                continue;
            }
            let val = assigned.get(&i)?;
            for _ in 0..e {
                v = v.mul(val);
            }
        }
        let d = m.exponent(x) as usize;
        if out.len() <= d {
            out.resize(d + 1, zero.clone());
        }
        out[d] = out[d].add(&v);
    }
    Some(trim(out))
}

/// One complete solution: all `s_k` and the kernel vector.
#[derive(Clone, Debug)]
pub struct FiberPoint<F> {
    pub s: Vec<F>,
    /// `None` when the kernel rows were inconsistent at this point.
    pub p: Option<Vec<F>>,
}

#[derive(Clone, Debug)]
pub struct Fiber<F> {
    pub points: Vec<FiberPoint<F>>,
    /// Some branch had roots outside the field or an unconstrained variable.
    pub unresolved: bool,
}

/// Solutions with `s_secular = value`. Variables are solved from the least
/// upward in lex precedence; each step takes the gcd of the basis elements
/// whose greatest variable is the current one.
pub fn solve_fiber<F: FiberField>(
    sys: &MagyariSystem,
    lex: &LexBasis,
    secular: usize,
    value: F,
) -> Fiber<F> {
    let order = lex.ring.order();
    let prec = order.precedence();
    let s_set: Vec<usize> = sys.s_vars.clone();
    // s-variables from least to greatest
    let chain: Vec<usize> = prec.iter().rev().copied().filter(|v| s_set.contains(v)).collect();
    debug_assert_eq!(chain[0], sys.s_vars[secular - 1]);
    let rank = |v: usize| prec.iter().position(|&x| x == v).unwrap();
    let mut unresolved = false;
    let mut partial: Vec<HashMap<usize, F>> = vec![HashMap::from([(chain[0], value.clone())])];
    for &x in &chain[1..] {
        let mut next = Vec::new();
        for a in partial {
            let mut g: Vec<F> = Vec::new();
            let mut constrained = false;
            for p in &lex.polynomials {
                let vars = p.variables();
                if !vars.contains(&x) || vars.iter().any(|&v| rank(v) < rank(x)) {
                    continue;
                }
                if let Some(u) = specialize(p, &a, x, &value) {
                    if u.is_empty() {
                        continue;
                    }
                    constrained = true;
                    g = if g.is_empty() { u } else { poly_gcd(g, u) };
                }
            }
            if !constrained {
                unresolved = true;
                continue;
            }
            let roots = F::roots_in_field(&g);
            if roots.len() + 1 < g.len() {
                unresolved = true;
            }
            for r in roots {
                let mut b = a.clone();
                b.insert(x, r);
                next.push(b);
            }
        }
        partial = next;
    }
    let points = partial
        .into_iter()
        .map(|a| {
            let s: Vec<F> = sys.s_vars.iter().map(|v| a[v].clone()).collect();
            let p = kernel_vector(sys, &s).ok();
            FiberPoint { s, p }
        })
        .collect();
    Fiber { points, unresolved }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn surd_roots_of_golden_quadratic() {
        let unit = QuadSurd::new(rat(0), rat(0), rat(5));
        let f: Vec<QuadSurd> = [-1, -1, 1].iter().map(|&c| unit.from_rational(rat(c))).collect();
        let roots = QuadSurd::roots_in_field(&f);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(horner(&f, r).is_zero());
        }
    }

    #[test]
    fn gcd_over_rationals() {
        let a = vec![rat(-1), rat(0), rat(1)];
        let b = vec![rat(1), rat(1)];
        assert_eq!(poly_gcd(a, b), vec![rat(1), rat(1)]);
    }
}
