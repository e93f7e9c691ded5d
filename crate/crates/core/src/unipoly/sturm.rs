//! Sturm sequences and bisection-based real-root isolation.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::dense::UniPoly;
use crate::poly::Rational;

/// A point of the extended rational line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Rational),
    PosInf,
}

/// Signed remainder chain `p, p', -rem(p, p'), ...`, each member scaled by
/// a positive constant to primitive integer form.
#[derive(Clone, Debug)]
pub struct SturmChain {
    /// Integer coefficients, ascending.
    chain: Vec<Vec<BigInt>>,
}

fn positive_primitive(p: &UniPoly) -> UniPoly {
    // primitive() forces a positive leading coefficient; restore the sign
    let prim = p.primitive();
    if p.leading().is_some_and(|l| l.is_negative()) {
        prim.scale(&-Rational::one())
    } else {
        prim
    }
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let mut chain = vec![positive_primitive(p)];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(positive_primitive(&d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(positive_primitive(&r.scale(&-Rational::one())));
        }
        // positive_primitive leaves integer coefficients with their signs
        SturmChain {
            chain: chain
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.to_integer()).collect())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn sign_at(p: &[BigInt], x: &Bound) -> i8 {
        let deg = p.len() - 1;
        let lead = if p[deg].is_positive() { 1 } else { -1 };
        match x {
            Bound::PosInf => lead,
            Bound::NegInf => {
                if deg % 2 == 0 {
                    lead
                } else {
                    -lead
                }
            }
            Bound::At(v) => {
                // sign of den^deg p(num/den), by integer Horner
                let (num, den) = (v.numer(), v.denom());
                let mut acc = p[deg].clone();
                let mut den_pow = BigInt::one();
                for c in p[..deg].iter().rev() {
                    den_pow *= den;
                    acc = acc * num + c * &den_pow;
                }
                match acc.sign() {
                    Sign::NoSign => 0,
                    Sign::Plus => 1,
                    Sign::Minus => -1,
                }
            }
        }
    }

    pub fn variations(&self, x: &Bound) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = Self::sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Bound, b: &Bound) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Distinct real roots of `p` in `(a, b]`.
pub fn sturm_real_root_count(p: &UniPoly, a: &Bound, b: &Bound) -> usize {
    SturmChain::new(p).count(a, b)
}

/// Cauchy bound `1 + max |a_i / a_n|`: every root lies strictly inside.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.leading().expect("nonzero").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// A power of two strictly above the Fujiwara bound
/// `2 max |a_(n-i)/a_n|^(1/i)` (constant term halved), so every real root
/// lies inside `(-b, b)`.
pub fn root_bound(p: &UniPoly) -> Rational {
    let n = p.degree().expect("nonzero");
    let lead = p.leading().expect("nonzero").abs();
    let two = Rational::from_integer(2.into());
    let mut k: i64 = 0;
    for i in 1..=n {
        let mut r = p.coeff(n - i).abs() / &lead;
        if r.is_zero() {
            continue;
        }
        if i == n {
            r /= &two;
        }
        // smallest k with (2^k)^i >= r
        while pow2(k * i as i64) < r {
            k += 1;
        }
    }
    pow2(k + 2)
}

fn pow2(e: i64) -> Rational {
    let one = BigInt::one();
    if e >= 0 {
        Rational::from_integer(one << e as usize)
    } else {
        Rational::new(one.clone(), one << (-e) as usize)
    }
}

/// Half-open interval `(lo, hi]` holding exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isolated {
    pub lo: Rational,
    pub hi: Rational,
}

impl Isolated {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / Rational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

/// Disjoint isolating intervals for the real roots of `p`, ascending.
/// `p` need not be square-free; roots are counted once.
pub fn isolate(p: &UniPoly) -> Vec<Isolated> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let half = Rational::new(1.into(), 2.into());
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&Bound::At(lo.clone()), &Bound::At(hi.clone()));
        match n {
            0 => {}
            1 => out.push(Isolated { lo, hi }),
            _ => {
                let mid = (&lo + &hi) * &half;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrink an isolating interval of `p` below `width` by bisection.
pub fn refine(p: &UniPoly, iv: &Isolated, width: &Rational) -> Isolated {
    let chain = SturmChain::new(p);
    let half = Rational::new(1.into(), 2.into());
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let all = (Bound::NegInf, Bound::PosInf);
        assert_eq!(sturm_real_root_count(&UniPoly::from_ints(&[0, -4, 0, 1], "s"), &all.0, &all.1), 3);
        assert_eq!(sturm_real_root_count(&UniPoly::from_ints(&[3, 0, 1], "x"), &all.0, &all.1), 0);
        assert_eq!(sturm_real_root_count(&UniPoly::from_ints(&[3, 3, 1], "x"), &all.0, &all.1), 0);
    }

    #[test]
    fn half_open_convention() {
        let p = UniPoly::from_ints(&[-1, 0, 1], "x");
        let r = |v: i64| Bound::At(Rational::from_integer(v.into()));
        assert_eq!(sturm_real_root_count(&p, &r(-1), &r(1)), 1);
        assert_eq!(sturm_real_root_count(&p, &r(-2), &r(1)), 2);
    }

    #[test]
    fn isolation_separates_close_roots() {
        // (x - 1)(x - 1001/1000)(x + 3)
        let a = UniPoly::linear(&Rational::one(), "x");
        let b = UniPoly::linear(&Rational::new(1001.into(), 1000.into()), "x");
        let c = UniPoly::linear(&Rational::from_integer((-3).into()), "x");
        let p = a.mul(&b).mul(&c);
        let ivs = isolate(&p);
        assert_eq!(ivs.len(), 3);
        let w = Rational::new(1.into(), 1_000_000.into());
        let fine = refine(&p, &ivs[2], &w);
        assert!(fine.width() < w);
        assert!((fine.midpoint_f64() - 1.001).abs() < 1e-5);
    }
}
