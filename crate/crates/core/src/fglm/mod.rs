//! Zero-dimensionality detection and FGLM order conversion.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::poly::{poly_reduce, Monomial, MonomialOrder, PolyError, Polynomial, Rational, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FglmError {
    #[error("ideal is not zero-dimensional: no pure power of `{0}` among the leading monomials")]
    NotZeroDimensional(String),
    #[error("staircase exceeds {0} monomials")]
    StaircaseTooLarge(usize),
    #[error("empty basis")]
    EmptyBasis,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Normal monomials modulo a Gröbner basis, ascending in its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub monomials: Vec<Monomial>,
}

impl Staircase {
    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }
}

pub const DEFAULT_STAIRCASE_LIMIT: usize = 1 << 20;

/// Every monomial not divisible by a leading monomial of `gb`, under the
/// order of `gb`'s ring. Fails for positive-dimensional ideals, naming the
/// first variable without a pure power among the leading monomials.
pub fn quotient_staircase(gb: &[Polynomial]) -> Result<Staircase, FglmError> {
    quotient_staircase_bounded(gb, DEFAULT_STAIRCASE_LIMIT)
}

pub fn quotient_staircase_bounded(gb: &[Polynomial], limit: usize) -> Result<Staircase, FglmError> {
    let ring = gb.first().ok_or(FglmError::EmptyBasis)?.ring().clone();
    let lms: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
    if lms.iter().any(Monomial::is_one) {
        return Ok(Staircase { monomials: Vec::new() });
    }
    let n = ring.nvars();
    for v in 0..n {
        let pure = lms.iter().any(|m| m.exponent(v) > 0 && m.support().all(|i| i == v));
        if !pure {
            return Err(FglmError::NotZeroDimensional(ring.vars()[v].clone()));
        }
    }
    let reducible = |m: &Monomial| lms.iter().any(|l| l.divides(m));
    let mut seen = HashSet::new();
    let mut stack = vec![Monomial::one(n)];
    seen.insert(Monomial::one(n));
    let mut out = Vec::new();
    while let Some(m) = stack.pop() {
        out.push(m.clone());
        if out.len() > limit {
            return Err(FglmError::StaircaseTooLarge(limit));
        }
        for v in 0..n {
            let next = m.mul_var(v);
            if !reducible(&next) && seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let order = ring.order();
    out.sort_by(|a, b| order.cmp(a, b));
    Ok(Staircase { monomials: out })
}

/// Reduced Gröbner basis in the target order, ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct LexBasis {
    pub ring: Arc<Ring>,
    pub polynomials: Vec<Polynomial>,
    pub staircase_dimension: usize,
}

impl LexBasis {
    /// The element involving only `var`, if any.
    pub fn univariate(&self, var: usize) -> Option<&Polynomial> {
        self.polynomials.iter().find(|p| p.variables() == [var])
    }
}

/// Coordinates over the source staircase, as an integer vector over a
/// common positive denominator.
#[derive(Clone, Debug)]
struct NfVec {
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfVec {
    fn unit(dim: usize, i: usize) -> Self {
        let mut num = vec![BigInt::zero(); dim];
        num[i] = BigInt::one();
        NfVec { num, den: BigInt::one() }
    }

    fn from_poly(p: &Polynomial, index: &HashMap<Monomial, usize>, dim: usize) -> Self {
        let den = p.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); dim];
        for (m, c) in p.terms() {
            num[index[m]] = c.numer() * (&den / c.denom());
        }
        NfVec { num, den }
    }
}

/// Multiplication by one variable on the quotient, built lazily column by
/// column.
struct MulMatrix {
    columns: Vec<Option<NfVec>>,
}

struct Quotient<'a> {
    gb: &'a [Polynomial],
    ring: Arc<Ring>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mats: Vec<MulMatrix>,
}

impl<'a> Quotient<'a> {
    fn new(gb: &'a [Polynomial], stair: Staircase) -> Self {
        let ring = gb[0].ring().clone();
        let index = stair.monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = stair.monomials.len();
        let mats = (0..ring.nvars())
            .map(|_| MulMatrix { columns: vec![None; dim] })
            .collect();
        Quotient { gb, ring, basis: stair.monomials, index, mats }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn column(&mut self, var: usize, b: usize) -> &NfVec {
        if self.mats[var].columns[b].is_none() {
            let m = self.basis[b].mul_var(var);
            let col = match self.index.get(&m) {
                Some(&i) => NfVec::unit(self.dim(), i),
                None => {
                    let t = Polynomial::term(&self.ring, m, Rational::one());
                    let nf = poly_reduce(&t, self.gb).expect("same ring");
                    NfVec::from_poly(&nf, &self.index, self.dim())
                }
            };
            self.mats[var].columns[b] = Some(col);
        }
        self.mats[var].columns[b].as_ref().unwrap()
    }

    /// `NF(x_var * m)` from `NF(m)`.
    fn multiply(&mut self, var: usize, v: &NfVec) -> NfVec {
        let dim = self.dim();
        let mut den = v.den.clone();
        let support: Vec<usize> = (0..dim).filter(|&b| !v.num[b].is_zero()).collect();
        for &b in &support {
            den = den.lcm(&(&v.den * &self.column(var, b).den));
        }
        let mut num = vec![BigInt::zero(); dim];
        for &b in &support {
            let col = self.column(var, b);
            let f = &v.num[b] * (&den / (&v.den * &col.den));
            for (acc, c) in num.iter_mut().zip(&col.num) {
                if !c.is_zero() {
                    *acc += &f * c;
                }
            }
        }
        let mut out = NfVec { num, den };
        normalize(&mut out);
        out
    }
}

fn normalize(v: &mut NfVec) {
    let g = v.num.iter().fold(v.den.clone(), |g, x| g.gcd(x));
    if !g.is_one() && !g.is_zero() {
        for x in v.num.iter_mut() {
            *x /= &g;
        }
        v.den /= &g;
    }
}

/// Echelon rows over the integers, each tagged with the combination of
/// candidate monomials that produced it.
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>, Vec<BigInt>)>,
}

impl Echelon {
    /// Reduce `w` (with combination `combo`); returns the reduced pair.
    fn reduce(&self, mut w: Vec<BigInt>, mut combo: Vec<BigInt>) -> (Vec<BigInt>, Vec<BigInt>) {
        for (pivot, rw, rc) in &self.rows {
            if w[*pivot].is_zero() {
                continue;
            }
            let g = rw[*pivot].gcd(&w[*pivot]);
            let a = &rw[*pivot] / &g;
            let b = &w[*pivot] / &g;
            for (x, y) in w.iter_mut().zip(rw) {
                *x = &a * &*x - &b * y;
            }
            for (i, x) in combo.iter_mut().enumerate() {
                let y = rc.get(i).cloned().unwrap_or_default();
                *x = &a * &*x - &b * y;
            }
            let g = w.iter().chain(combo.iter()).fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::one() {
                w.iter_mut().chain(combo.iter_mut()).for_each(|x| *x /= &g);
            }
        }
        (w, combo)
    }
}

/// Convert a reduced Gröbner basis of a zero-dimensional ideal to the
/// reduced Gröbner basis under `target`. Target monomials are visited in
/// ascending order; a new element appears whenever a normal form becomes
/// linearly dependent on those of the accepted monomials.
pub fn fglm_convert(gb: &[Polynomial], target: &MonomialOrder) -> Result<LexBasis, FglmError> {
    fglm_convert_with(gb, target, &Budget::unlimited())
}

pub fn fglm_convert_with(gb: &[Polynomial], target: &MonomialOrder, budget: &Budget) -> Result<LexBasis, FglmError> {
    let src_ring = gb.first().ok_or(FglmError::EmptyBasis)?.ring().clone();
    let out_ring = src_ring.reordered(target.clone())?;
    let gb: Vec<Polynomial> = gb.iter().filter(|g| !g.is_zero()).cloned().collect();
    let stair = quotient_staircase(&gb)?;
    let dim = stair.dimension();
    if dim == 0 {
        return Ok(LexBasis {
            polynomials: vec![Polynomial::one(&out_ring)],
            ring: out_ring,
            staircase_dimension: 0,
        });
    }
    let n = src_ring.nvars();
    let mut quot = Quotient::new(&gb, stair);
    let one = Monomial::one(n);
    let mut accepted: Vec<(Monomial, NfVec)> = Vec::new();
    let mut echelon = Echelon { rows: Vec::new() };
    let mut found: Vec<Polynomial> = Vec::new();
    // candidates: (monomial, parent index into accepted, variable)
    let mut cands: Vec<(Monomial, Option<(usize, usize)>)> = vec![(one, None)];
    let mut seen: HashSet<Monomial> = HashSet::new();
    while !cands.is_empty() {
        budget.check("fglm")?;
        // pop the least candidate in the target order
        let (mut best, mut at) = (0, 0);
        for (i, (m, _)) in cands.iter().enumerate() {
            if i == 0 || target.cmp(m, &cands[best].0).is_lt() {
                best = i;
                at = i;
            }
        }
        let (m, parent) = cands.swap_remove(at);
        if found.iter().any(|f| f.leading_monomial().unwrap().divides(&m)) {
            continue;
        }
        let nf = match parent {
            None => {
                let i = *quot.index.get(&m).expect("1 is standard");
                NfVec::unit(dim, i)
            }
            Some((k, var)) => {
                let src = accepted[k].1.clone();
                quot.multiply(var, &src)
            }
        };
        let mut combo = vec![BigInt::zero(); accepted.len() + 1];
        combo[accepted.len()] = nf.den.clone();
        let (w, combo) = echelon.reduce(nf.num.clone(), combo);
        match w.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                echelon.rows.push((pivot, w, combo));
                let k = accepted.len();
                accepted.push((m.clone(), nf));
                for var in 0..n {
                    let next = m.mul_var(var);
                    if seen.insert(next.clone()) {
                        cands.push((next, Some((k, var))));
                    }
                }
            }
            None => {
                let mut terms: Vec<(Monomial, Rational)> = Vec::new();
                for (i, c) in combo.iter().enumerate() {
                    if !c.is_zero() {
                        let mono = if i < accepted.len() { accepted[i].0.clone() } else { m.clone() };
                        terms.push((mono, Rational::from_integer(c.clone())));
                    }
                }
                let p = Polynomial::from_terms(&out_ring, terms)?.monic();
                debug_assert_eq!(p.leading_monomial(), Some(&m));
                found.push(p);
            }
        }
    }
    found.sort_by(|a, b| target.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    debug_assert_eq!(accepted.len(), dim);
    Ok(LexBasis {
        ring: out_ring,
        polynomials: found,
        staircase_dimension: dim,
    })
}

/// Minimal polynomial of variable `var` on the quotient, ascending
/// coefficients, monic. Uses only powers of `var`, so it is the univariate
/// element of every lex basis with `var` least.
pub fn minimal_polynomial(gb: &[Polynomial], var: usize, budget: &Budget) -> Result<Vec<Rational>, FglmError> {
    let gb: Vec<Polynomial> = gb.iter().filter(|g| !g.is_zero()).cloned().collect();
    let stair = quotient_staircase(&gb)?;
    let dim = stair.dimension();
    if dim == 0 {
        return Ok(vec![Rational::one()]);
    }
    let n = gb[0].nvars();
    let mut quot = Quotient::new(&gb, stair);
    let i = *quot.index.get(&Monomial::one(n)).expect("1 is standard");
    let mut v = NfVec::unit(dim, i);
    let mut echelon = Echelon { rows: Vec::new() };
    for k in 0..=dim {
        budget.check("minimal polynomial")?;
        let mut combo = vec![BigInt::zero(); k + 1];
        combo[k] = v.den.clone();
        let (w, combo) = echelon.reduce(v.num.clone(), combo);
        match w.iter().position(|x| !x.is_zero()) {
            Some(pivot) => echelon.rows.push((pivot, w, combo)),
            None => {
                let lead = Rational::from_integer(combo[k].clone());
                return Ok(combo.into_iter().map(|c| Rational::from_integer(c) / &lead).collect());
            }
        }
        v = quot.multiply(var, &v);
    }
    unreachable!("dependence must appear within the quotient dimension")
}
