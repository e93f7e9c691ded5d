//! Completion to a minimal Janet basis.

use std::sync::Arc;

use log::{debug, trace};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::partition::{janet_divides, janet_partition};
use super::InvolutiveError;
use crate::budget::Budget;
use crate::exec::{par_map, Execution};
use crate::poly::intpoly::{reduce_observed, IntPoly, ReduceMode, Step};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// A basis element with its ancestry: `anc` is the leading monomial of the
/// element it was prolonged from, `nmp` the nonmultiplicative variables
/// already used for prolongation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub pol: Polynomial,
    pub anc: Monomial,
    pub nmp: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JanetStats {
    pub iterations: u64,
    pub prolongations: u64,
    pub criterion_i: u64,
    pub criterion_ii: u64,
    pub reductions: u64,
    pub max_queue: usize,
}

impl JanetStats {
    fn absorb(&mut self, d: &HeadDelta) {
        self.criterion_i += d.criterion_i;
        self.criterion_ii += d.criterion_ii;
        self.reductions += d.reductions;
    }
}

#[derive(Clone, Debug)]
pub struct JanetBasisResult {
    /// Monic, sorted by increasing leading monomial.
    pub basis: Vec<Triple>,
    pub ring: Arc<Ring>,
    pub stats: JanetStats,
    /// With tracing on: `basis[i].pol = sum_j history[i][j] * inputs[j]`.
    pub history: Option<Vec<Vec<Polynomial>>>,
    /// The generators in `ring`, as given.
    pub inputs: Vec<Polynomial>,
}

impl JanetBasisResult {
    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|t| t.pol.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].pol.is_constant()
    }
}

#[derive(Clone, Debug)]
pub struct JanetOptions {
    pub exec: Execution,
    pub trace: bool,
    /// Apply the two involutive criteria (on by default).
    pub criteria: bool,
    pub budget: Budget,
}

impl Default for JanetOptions {
    fn default() -> Self {
        JanetOptions {
            exec: Execution::available(),
            trace: false,
            criteria: true,
            budget: Budget::unlimited(),
        }
    }
}

#[derive(Clone)]
struct Work {
    pol: IntPoly,
    anc: Monomial,
    nmp: u32,
    seq: u64,
    cof: Option<Vec<Polynomial>>,
}

impl Work {
    fn lm(&self) -> &Monomial {
        self.pol.lm().expect("working polynomials are nonzero")
    }
}

/// The current intermediate basis with its Janet partition.
struct TSet {
    items: Vec<Work>,
    masks: Vec<u32>,
    precedence: Vec<usize>,
}

impl TSet {
    fn refresh(&mut self) {
        let lms: Vec<Monomial> = self.items.iter().map(|w| w.lm().clone()).collect();
        let p = janet_partition(&lms, &self.precedence);
        self.masks = (0..lms.len()).map(|k| p.mask(k)).collect();
    }

    fn divisor(&self, w: &Monomial) -> Option<usize> {
        self.items
            .iter()
            .zip(&self.masks)
            .position(|(t, &m)| janet_divides(t.lm(), m, w))
    }

    fn pols(&self) -> Vec<&IntPoly> {
        self.items.iter().map(|w| &w.pol).collect()
    }
}

#[derive(Default)]
struct HeadDelta {
    criterion_i: u64,
    criterion_ii: u64,
    reductions: u64,
}

/// Which involutive criterion discarded a prolongation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionHit {
    I,
    II,
}

pub(crate) fn criterion(anc_f: &Monomial, anc_g: &Monomial, lm_f: &Monomial) -> Option<CriterionHit> {
    if anc_f.mul(anc_g).divides(lm_f) {
        return Some(CriterionHit::I);
    }
    if anc_f.lcm(anc_g).degree() < lm_f.degree() {
        return Some(CriterionHit::II);
    }
    None
}

fn apply_steps(
    cof: &mut [Polynomial],
    them: &[&Work],
    a: &BigInt,
    b: &BigInt,
    u: &Monomial,
    by: usize,
) {
    let ra = Rational::from_integer(a.clone());
    let rb = Rational::from_integer(-b.clone());
    let other = them[by].cof.as_ref().expect("traced basis");
    for (c, o) in cof.iter_mut().zip(other) {
        let scaled = if a.is_one() { c.clone() } else { c.scale(&ra) };
        *c = &scaled + &o.mul_term(u, &rb);
    }
}

/// Fraction-free reduction of `w` modulo `t`, keeping cofactors in step.
fn reduce_work(w: &mut Work, t: &TSet, order: &MonomialOrder, mode: ReduceMode, skip_head: bool) -> usize {
    let them: Vec<&Work> = t.items.iter().collect();
    let pols = t.pols();
    let head = w.lm().clone();
    let poly = std::mem::replace(&mut w.pol, IntPoly::zero());
    let mut cof = w.cof.take();
    let red = reduce_observed(
        poly,
        &pols,
        order,
        |m| {
            if skip_head && *m == head {
                None
            } else {
                t.divisor(m)
            }
        },
        mode,
        &mut |step| {
            if let Some(cof) = cof.as_mut() {
                match step {
                    Step::Reduce { a, b, u, by } => apply_steps(cof, &them, a, b, u, by),
                    Step::Divide(d) => {
                        let inv = Rational::new(BigInt::one(), d.clone());
                        for c in cof.iter_mut() {
                            *c = c.scale(&inv);
                        }
                    }
                }
            }
        },
    );
    w.pol = red.poly;
    w.cof = cof;
    red.steps
}

/// Janet head normal form of a queued triple. `None` when it vanished or a
/// criterion fired.
fn head_normal_form(mut f: Work, t: &TSet, order: &MonomialOrder, criteria: bool) -> (Option<Work>, HeadDelta) {
    let mut delta = HeadDelta::default();
    let Some(g) = t.divisor(f.lm()) else {
        return (Some(f), delta);
    };
    if criteria && *f.lm() != f.anc {
        match criterion(&f.anc, &t.items[g].anc, f.lm()) {
            Some(CriterionHit::I) => {
                delta.criterion_i += 1;
                return (None, delta);
            }
            Some(CriterionHit::II) => {
                delta.criterion_ii += 1;
                return (None, delta);
            }
            None => {}
        }
    }
    delta.reductions += reduce_work(&mut f, t, order, ReduceMode::Head, false) as u64;
    if f.pol.is_zero() {
        return (None, delta);
    }
    // The head changed, so the result starts a new ancestry.
    f.anc = f.lm().clone();
    f.nmp = 0;
    (Some(f), delta)
}

fn janet_head_reduce(q: Vec<Work>, t: &TSet, order: &MonomialOrder, opts: &JanetOptions, stats: &mut JanetStats) -> Vec<Work> {
    let out = par_map(opts.exec, q, |f| head_normal_form(f, t, order, opts.criteria));
    let mut kept = Vec::with_capacity(out.len());
    for (w, d) in out {
        stats.absorb(&d);
        if let Some(w) = w {
            kept.push(w);
        }
    }
    kept
}

/// Minimal degree of the leading monomial, then fewest terms, then the
/// lowest leading monomial, then the earliest insertion.
fn select(q: &[Work], order: &MonomialOrder) -> usize {
    let mut best = 0;
    for k in 1..q.len() {
        let (a, b) = (&q[k], &q[best]);
        let key = a
            .lm()
            .degree()
            .cmp(&b.lm().degree())
            .then(a.pol.len().cmp(&b.pol.len()))
            .then(order.cmp(a.lm(), b.lm()))
            .then(a.seq.cmp(&b.seq));
        if key.is_lt() {
            best = k;
        }
    }
    best
}

/// Minimal Janet basis of the ideal generated by `gens` under `order`,
/// with default options.
pub fn janet_basis(gens: &[Polynomial], order: &MonomialOrder) -> Result<JanetBasisResult, InvolutiveError> {
    janet_basis_with(gens, order, &JanetOptions::default())
}

pub fn janet_basis_with(
    gens: &[Polynomial],
    order: &MonomialOrder,
    opts: &JanetOptions,
) -> Result<JanetBasisResult, InvolutiveError> {
    let Some(first) = gens.first() else {
        return Err(InvolutiveError::EmptyInput);
    };
    let ring = first.ring().reordered(order.clone())?;
    for g in gens {
        if g.ring().vars() != ring.vars() {
            return Err(InvolutiveError::Poly(crate::poly::PolyError::RingMismatch));
        }
    }
    if let Some(i) = gens.iter().position(|g| g.is_zero()) {
        return Err(InvolutiveError::ZeroPolynomial(i));
    }
    let inputs: Vec<Polynomial> = gens.iter().map(|g| g.in_ring(&ring)).collect();
    let nvars = ring.nvars();
    if nvars > 32 {
        return Err(InvolutiveError::TooManyVariables(nvars));
    }
    let all_vars: u32 = if nvars == 32 { u32::MAX } else { (1u32 << nvars) - 1 };
    let mut seq = 0u64;
    let mut works: Vec<Work> = inputs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let pol = IntPoly::from_poly(g);
            let cof = opts.trace.then(|| {
                let k = Rational::from_integer(pol.lc().unwrap().clone()) / g.leading_coeff().unwrap();
                (0..inputs.len())
                    .map(|j| if j == i { Polynomial::constant(&ring, k.clone()) } else { Polynomial::zero(&ring) })
                    .collect()
            });
            seq += 1;
            Work {
                anc: pol.lm().unwrap().clone(),
                pol,
                nmp: 0,
                seq: seq - 1,
                cof,
            }
        })
        .collect();

    let mut stats = JanetStats::default();
    let order = ring.order().clone();
    let lowest = (1..works.len()).fold(0, |best, k| {
        if order.cmp(works[k].lm(), works[best].lm()).is_lt() {
            k
        } else {
            best
        }
    });
    let f = works.remove(lowest);
    let mut t = TSet {
        items: vec![f],
        masks: vec![],
        precedence: order.precedence().to_vec(),
    };
    t.refresh();
    let unit = |stats: JanetStats| JanetBasisResult {
        basis: vec![Triple {
            pol: Polynomial::one(&ring),
            anc: Monomial::one(nvars),
            nmp: vec![],
        }],
        ring: ring.clone(),
        stats,
        history: None,
        inputs: inputs.clone(),
    };
    if t.items[0].lm().is_one() {
        return Ok(unit(stats));
    }
    let mut q = janet_head_reduce(works, &t, &order, opts, &mut stats);

    while !q.is_empty() {
        opts.budget.check("janet basis")?;
        stats.iterations += 1;
        stats.max_queue = stats.max_queue.max(q.len());
        let k = select(&q, &order);
        let mut p = q.swap_remove(k);
        if p.lm().is_one() {
            debug!("janet: inconsistent system after {} iterations", stats.iterations);
            return Ok(unit(stats));
        }
        if *p.lm() == p.anc {
            let mut kept = Vec::with_capacity(t.items.len());
            for r in t.items.drain(..) {
                if r.lm() != p.lm() && p.lm().divides(r.lm()) {
                    q.push(r);
                } else {
                    kept.push(r);
                }
            }
            t.items = kept;
            t.refresh();
        }
        if t.divisor(p.lm()).is_some() {
            // The smaller set induces a different partition; requeue.
            trace!("janet: head became reducible after displacement");
            q.push(p);
            q = janet_head_reduce(q, &t, &order, opts, &mut stats);
            continue;
        }
        stats.reductions += reduce_work(&mut p, &t, &order, ReduceMode::Full, false) as u64;
        t.items.push(p);
        t.refresh();
        for i in 0..t.items.len() {
            let nm = all_vars & !t.masks[i];
            let fresh = nm & !t.items[i].nmp;
            if fresh == 0 {
                continue;
            }
            for &x in order.precedence().iter().rev() {
                if fresh >> x & 1 == 0 {
                    continue;
                }
                let src = &t.items[i];
                let pol = src.pol.mul_var(x);
                let cof = src.cof.as_ref().map(|c| {
                    let xm = Monomial::var(nvars, x);
                    c.iter().map(|p| p.mul_term(&xm, &Rational::one())).collect()
                });
                q.push(Work {
                    pol,
                    anc: src.anc.clone(),
                    nmp: 0,
                    seq,
                    cof,
                });
                seq += 1;
                stats.prolongations += 1;
            }
            t.items[i].nmp = nm;
        }
        q = janet_head_reduce(q, &t, &order, opts, &mut stats);
    }

    // Final tail autoreduction against the finished basis.
    for i in 0..t.items.len() {
        let mut w = t.items[i].clone();
        stats.reductions += reduce_work(&mut w, &t, &order, ReduceMode::Full, true) as u64;
        t.items[i] = w;
    }

    let mut idx: Vec<usize> = (0..t.items.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(t.items[a].lm(), t.items[b].lm()));
    let masks = t.masks.clone();
    let mut basis = Vec::with_capacity(idx.len());
    let mut history = opts.trace.then(Vec::new);
    for &i in &idx {
        let w = &t.items[i];
        let lc = Rational::from_integer(w.pol.lc().unwrap().clone());
        basis.push(Triple {
            pol: w.pol.to_monic_poly(&ring),
            anc: w.anc.clone(),
            nmp: (0..nvars).filter(|&v| w.nmp >> v & 1 == 1).collect(),
        });
        if let (Some(h), Some(c)) = (history.as_mut(), w.cof.as_ref()) {
            let inv = Rational::one() / &lc;
            h.push(c.iter().map(|p| p.scale(&inv)).collect());
        }
        debug_assert!(masks[i] & w.nmp == 0);
    }
    debug!(
        "janet: {} elements, {} iterations, {} prolongations, criteria {}/{}",
        basis.len(),
        stats.iterations,
        stats.prolongations,
        stats.criterion_i,
        stats.criterion_ii
    );
    Ok(JanetBasisResult {
        basis,
        ring,
        stats,
        history,
        inputs,
    })
}

/// Reduction depth for [`janet_normal_form`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalFormMode {
    HeadOnly,
    Full,
}

fn tset_of(basis: &[Triple]) -> (TSet, Arc<Ring>) {
    let ring = basis[0].pol.ring().clone();
    let mut t = TSet {
        items: basis
            .iter()
            .map(|tr| Work {
                pol: IntPoly::from_poly(&tr.pol),
                anc: tr.anc.clone(),
                nmp: tr.nmp.iter().fold(0, |m, &v| m | 1 << v),
                seq: 0,
                cof: None,
            })
            .collect(),
        masks: vec![],
        precedence: ring.order().precedence().to_vec(),
    };
    t.refresh();
    (t, ring)
}

/// Janet normal form of `f` modulo the leading monomials of `basis`, which
/// must be nonempty and share `f`'s ring. The result is congruent to `f`.
pub fn janet_normal_form(f: &Polynomial, basis: &[Triple], mode: NormalFormMode) -> Polynomial {
    if f.is_zero() || basis.is_empty() {
        return f.clone();
    }
    let (t, ring) = tset_of(basis);
    let pols = t.pols();
    let rmode = match mode {
        NormalFormMode::HeadOnly => ReduceMode::Head,
        NormalFormMode::Full => ReduceMode::Full,
    };
    crate::poly::reduce::reduce_exact(f, &pols, &ring, |m| t.divisor(m), rmode)
}

/// Head normal form of a triple with both criteria active, as used inside
/// the completion. Returns the criterion that fired, if any.
pub fn janet_head_normal_form(f: &Triple, basis: &[Triple]) -> (Polynomial, Option<CriterionHit>) {
    let ring = f.pol.ring().clone();
    if f.pol.is_zero() || basis.is_empty() {
        return (f.pol.clone(), None);
    }
    let (t, _) = tset_of(basis);
    let lm = f.pol.leading_monomial().unwrap();
    if let Some(g) = t.divisor(lm) {
        if *lm != f.anc {
            if let Some(hit) = criterion(&f.anc, &t.items[g].anc, lm) {
                return (Polynomial::zero(&ring), Some(hit));
            }
        }
    }
    (janet_normal_form(&f.pol, basis, NormalFormMode::HeadOnly), None)
}

/// Janet partition of a finished basis, for checking involutivity.
pub fn nonmultiplicative_vars(basis: &[Triple]) -> Vec<Vec<usize>> {
    if basis.is_empty() {
        return vec![];
    }
    let lms: Vec<Monomial> = basis.iter().map(|t| t.pol.leading_monomial().unwrap().clone()).collect();
    let p = janet_partition(&lms, basis[0].pol.order().precedence());
    (0..lms.len()).map(|k| p.nonmultiplicative(k)).collect()
}

/// Every nonmultiplicative prolongation has vanishing Janet normal form.
pub fn is_janet_basis(basis: &[Triple]) -> bool {
    let nm = nonmultiplicative_vars(basis);
    basis.iter().zip(&nm).all(|(t, vars)| {
        let nvars = t.pol.nvars();
        vars.iter().all(|&x| {
            let prolonged = t.pol.mul_term(&Monomial::var(nvars, x), &Rational::one());
            janet_normal_form(&prolonged, basis, NormalFormMode::Full).is_zero()
        })
    })
}
