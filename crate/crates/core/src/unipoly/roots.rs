//! Square-free parts, rational roots, integer quadratic factors and the
//! combined real-root report.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::dense::UniPoly;
use super::sturm::{isolate, root_bound, Bound, Isolated, SturmChain};
use crate::poly::{format_rational, Rational};

pub const DEFAULT_QUADRATIC_BOUND: u64 = 10_000;

/// Up to this root bound, integer roots are found by scanning divisors of
/// the constant term instead of by isolation.
const DIVISOR_SCAN_LIMIT: u64 = 1 << 20;

/// `p / gcd(p, p')` in primitive form.
pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    assert!(!p.is_zero(), "square-free part of zero");
    if p.degree() == Some(0) {
        return UniPoly::constant(Rational::one(), p.var());
    }
    let g = p.gcd(&p.derivative());
    p.exact_div(&g).expect("gcd divides").primitive()
}

/// Multiplicity of `r` as a root of `p`, together with the deflated `p`.
fn deflate(p: &UniPoly, r: &Rational) -> (UniPoly, usize) {
    let lin = UniPoly::linear(r, p.var());
    let mut cur = p.clone();
    let mut k = 0;
    while cur.degree().unwrap_or(0) > 0 {
        match cur.exact_div(&lin) {
            Some(q) => {
                cur = q;
                k += 1;
            }
            None => break,
        }
    }
    (cur, k)
}

/// All rational roots with multiplicity, ascending.
///
/// The square-free part `sum c_i x^i` is mapped to the monic integer
/// polynomial in `y = c_n x`, whose rational roots are integers dividing
/// the constant term. Small root bounds are scanned directly; otherwise
/// Sturm isolation narrows each real root to width below one and the
/// integers inside are tested exactly.
pub fn rational_roots(p: &UniPoly) -> Vec<(Rational, usize)> {
    assert!(!p.is_zero(), "roots of zero");
    let (stripped, zeros) = p.strip_zero_root();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push((Rational::zero(), zeros));
    }
    if stripped.degree().unwrap_or(0) == 0 {
        return out;
    }
    let sf = squarefree_part(&stripped);
    let c = sf.integer_coeffs();
    let n = c.len() - 1;
    let lead = c[n].clone();
    let mut pow = BigInt::one();
    let mut y = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        y[i] = &c[i] * &pow;
        if i < n {
            pow *= &lead;
        }
    }
    // y[i] = c_i lead^(n-1-i) for i < n, y[n] = c_n * 1; divide the top by lead
    y[n] = BigInt::one();
    let monic = UniPoly::from_bigints(&y, sf.var());
    let found = |k: BigInt, out: &mut Vec<(Rational, usize)>| {
        if monic.eval(&Rational::from_integer(k.clone())).is_zero() {
            let root = Rational::new(k, lead.clone());
            let (_, m) = deflate(&stripped, &root);
            out.push((root, m));
        }
    };
    let bound = root_bound(&monic).to_integer();
    if let Some(b) = bound.to_u64().filter(|&b| b <= DIVISOR_SCAN_LIMIT) {
        // integer roots divide the constant term
        let a0 = &y[0];
        for k in 1..b {
            if (a0 % k).is_zero() {
                found(BigInt::from(k), &mut out);
                found(-BigInt::from(k), &mut out);
            }
        }
    } else {
        let chain = SturmChain::new(&monic);
        let half = Rational::new(1.into(), 2.into());
        for iv in isolate(&monic) {
            let (mut lo, mut hi) = (iv.lo, iv.hi);
            while &hi - &lo >= Rational::one() {
                let mid = (&lo + &hi) * &half;
                if chain.count(&Bound::At(lo.clone()), &Bound::At(mid.clone())) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let mut k: BigInt = lo.floor().to_integer() + 1;
            while Rational::from_integer(k.clone()) <= hi {
                found(k.clone(), &mut out);
                k += 1;
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// `x^2 + a x + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quadratic {
    pub a: i64,
    pub b: i64,
}

impl Quadratic {
    pub fn poly(&self, var: &str) -> UniPoly {
        UniPoly::from_ints(&[self.b, self.a, 1], var)
    }

    pub fn discriminant(&self) -> i64 {
        self.a * self.a - 4 * self.b
    }

    pub fn has_real_roots(&self) -> bool {
        self.discriminant() > 0
    }
}

#[derive(Clone, Debug)]
pub struct QuadraticSplit {
    /// Factors with multiplicity, in discovery order.
    pub factors: Vec<(Quadratic, usize)>,
    pub cofactor: UniPoly,
}

fn divides(d: i64, v: &BigInt) -> bool {
    if d == 0 {
        v.is_zero()
    } else {
        (v % BigInt::from(d)).is_zero()
    }
}

/// Every monic `x^2 + a x + b` with `|a|, |b| <= bound` dividing `p`
/// exactly. Candidates are filtered by `b | p(0)`, `(1+a+b) | p(1)`,
/// `(1-a+b) | p(-1)` and `(4+2a+b) | p(2)` before trial division.
pub fn bounded_quadratic_factors(p: &UniPoly, bound: u64) -> QuadraticSplit {
    let var = p.var().to_string();
    let mut cur = p.primitive();
    let mut factors = Vec::new();
    let bound = bound as i64;
    let at = |q: &UniPoly, x: i64| q.eval(&Rational::from_integer(x.into())).to_integer();
    if cur.degree().unwrap_or(0) < 2 || cur.coeff(0).is_zero() {
        return QuadraticSplit { factors, cofactor: cur };
    }
    // roots of a factor share the root bound r, so |a| <= 2r and |b| <= r^2
    let r = root_bound(&cur).to_integer().to_i64().unwrap_or(i64::MAX);
    let a_max = bound.min(r.saturating_mul(2));
    let b_max = bound.min(r.saturating_mul(r));
    for babs in 1..=b_max {
        for b in [babs, -babs] {
            if cur.degree().unwrap_or(0) < 2 || !divides(b, &cur.coeff(0).to_integer()) {
                continue;
            }
            let (p1, pm1, p2) = (at(&cur, 1), at(&cur, -1), at(&cur, 2));
            for a in -a_max..=a_max {
                if !divides(1 + a + b, &p1) || !divides(1 - a + b, &pm1) || !divides(4 + 2 * a + b, &p2) {
                    continue;
                }
                let quad = Quadratic { a, b };
                let qp = quad.poly(&var);
                let mut k = 0;
                while cur.degree().unwrap_or(0) >= 2 {
                    match cur.exact_div(&qp) {
                        Some(next) => {
                            cur = next.primitive();
                            k += 1;
                        }
                        None => break,
                    }
                }
                if k > 0 {
                    factors.push((quad, k));
                    if cur.degree().unwrap_or(0) < 2 {
                        break;
                    }
                }
            }
        }
    }
    QuadraticSplit { factors, cofactor: cur }
}

/// One real root `(-a + sign sqrt(a^2 - 4b)) / 2` of an integer quadratic.
#[derive(Clone, Debug)]
pub struct QuadraticRoot {
    pub quadratic: Quadratic,
    pub sign: i8,
    pub interval: Isolated,
}

impl QuadraticRoot {
    pub fn approx(&self) -> f64 {
        let d = self.quadratic.discriminant() as f64;
        (-(self.quadratic.a as f64) + self.sign as f64 * d.sqrt()) / 2.0
    }
}

#[derive(Clone, Debug)]
pub struct RealRootReport {
    pub rational_roots: Vec<(Rational, usize)>,
    pub quadratic_factors: Vec<(Quadratic, usize)>,
    pub quadratic_roots: Vec<QuadraticRoot>,
    pub residual: UniPoly,
    /// Isolating intervals of the residual's real roots; empty when the
    /// residual is certified root-free.
    pub residual_intervals: Vec<Isolated>,
}

impl RealRootReport {
    pub fn residual_degree(&self) -> usize {
        self.residual.degree().unwrap_or(0)
    }

    pub fn residual_real_roots(&self) -> usize {
        self.residual_intervals.len()
    }

    /// Distinct real roots over all parts.
    pub fn total_real_roots(&self) -> usize {
        self.rational_roots.len() + self.quadratic_roots.len() + self.residual_real_roots()
    }

    /// Approximate values of every real root, ascending.
    pub fn approximate_roots(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .rational_roots
            .iter()
            .map(|(r, _)| r.to_f64().unwrap_or(f64::NAN))
            .chain(self.quadratic_roots.iter().map(QuadraticRoot::approx))
            .chain(self.residual_intervals.iter().map(Isolated::midpoint_f64))
            .collect();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    pub fn to_json(&self) -> RealRootReportJson {
        RealRootReportJson {
            rational_roots: self
                .rational_roots
                .iter()
                .map(|(r, m)| RationalRootJson {
                    value: format_rational(r),
                    multiplicity: *m,
                })
                .collect(),
            quadratic_roots: self
                .quadratic_roots
                .iter()
                .map(|q| QuadraticRootJson {
                    a: q.quadratic.a,
                    b: q.quadratic.b,
                    interval: [format_rational(&q.interval.lo), format_rational(&q.interval.hi)],
                    sign: q.sign,
                    approx: q.approx(),
                })
                .collect(),
            complex_quadratics: self
                .quadratic_factors
                .iter()
                .filter(|(q, _)| !q.has_real_roots())
                .map(|(q, _)| q.clone())
                .collect(),
            residual_degree: self.residual_degree(),
            residual_real_roots: self.residual_real_roots(),
            residual_intervals: self
                .residual_intervals
                .iter()
                .map(|iv| [format_rational(&iv.lo), format_rational(&iv.hi)])
                .collect(),
            total_real_roots: self.total_real_roots(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalRootJson {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticRootJson {
    pub a: i64,
    pub b: i64,
    pub interval: [String; 2],
    pub sign: i8,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealRootReportJson {
    pub rational_roots: Vec<RationalRootJson>,
    pub quadratic_roots: Vec<QuadraticRootJson>,
    pub complex_quadratics: Vec<Quadratic>,
    pub residual_degree: usize,
    pub residual_real_roots: usize,
    pub residual_intervals: Vec<[String; 2]>,
    pub total_real_roots: usize,
}

/// Shrink `iv` (isolating for `chain`'s polynomial) below `width`.
fn shrink(chain: &SturmChain, iv: Isolated, width: &Rational) -> Isolated {
    let half = Rational::new(1.into(), 2.into());
    let (mut lo, mut hi) = (iv.lo, iv.hi);
    while &(&hi - &lo) >= width {
        let mid = (&lo + &hi) * &half;
        if chain.count(&Bound::At(lo.clone()), &Bound::At(mid.clone())) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Isolated { lo, hi }
}

pub fn isolate_real_roots(p: &UniPoly) -> RealRootReport {
    isolate_real_roots_with(p, DEFAULT_QUADRATIC_BOUND, &Rational::new(1.into(), (1u64 << 20).into()))
}

/// Rational roots, then integer quadratics up to `bound`, then Sturm
/// isolation of whatever is left. Quadratic-root intervals are narrower
/// than `width`.
pub fn isolate_real_roots_with(p: &UniPoly, bound: u64, width: &Rational) -> RealRootReport {
    assert!(!p.is_zero(), "roots of zero");
    let rational = rational_roots(p);
    let mut rest = p.primitive();
    for (r, _) in &rational {
        rest = deflate(&rest, r).0;
    }
    let split = bounded_quadratic_factors(&rest, bound);
    let mut quadratic_roots = Vec::new();
    for (quad, _) in &split.factors {
        if !quad.has_real_roots() {
            continue;
        }
        let qp = quad.poly(p.var());
        let chain = SturmChain::new(&qp);
        for (iv, sign) in isolate(&qp).into_iter().zip([-1i8, 1]) {
            quadratic_roots.push(QuadraticRoot {
                quadratic: quad.clone(),
                sign,
                interval: shrink(&chain, iv, width),
            });
        }
    }
    let residual = split.cofactor.primitive();
    let residual_intervals = if residual.degree().unwrap_or(0) > 0 {
        isolate(&squarefree_part(&residual))
    } else {
        Vec::new()
    };
    RealRootReport {
        rational_roots: rational,
        quadratic_factors: split.factors,
        quadratic_roots,
        residual,
        residual_intervals,
    }
}

/// Distinct real roots of `p` via one Sturm chain on its square-free part.
pub fn real_root_count(p: &UniPoly) -> usize {
    let sf = squarefree_part(p);
    if sf.degree().unwrap_or(0) == 0 {
        return 0;
    }
    SturmChain::new(&sf).count(&Bound::NegInf, &Bound::PosInf)
}
