//! Independent oracles for the integration tests. Only polynomial ring
//! arithmetic from the library is used here.
#![allow(dead_code)]

use std::sync::Arc;

use qes_core::poly::{Monomial, Polynomial, Rational, Ring};

/// Remainder of `f` by `g` with plain rational textbook division.
pub fn remainder(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut r = Polynomial::zero(&ring);
    while let Some((lm, lc)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        match g.iter().find(|h| h.leading_monomial().unwrap().divides(&lm)) {
            Some(h) => {
                let (hm, hc) = h.leading_term().unwrap();
                let u = hm.quotient_of(&lm).unwrap();
                p = &p - &h.mul_term(&u, &(&lc / hc));
            }
            None => {
                let t = Polynomial::term(&ring, lm, lc);
                r = &r + &t;
                p = &p - &t;
            }
        }
    }
    r
}

fn s_poly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let one = Rational::from_integer(1.into());
    &f.mul_term(&fm.quotient_of(&l).unwrap(), &(&one / fc)) - &g.mul_term(&gm.quotient_of(&l).unwrap(), &(&one / gc))
}

/// Reduced Gröbner basis by Buchberger's algorithm with every pair, then
/// full interreduction; monic and sorted by increasing leading monomial.
pub fn buchberger(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        // coprime heads reduce to zero (first criterion)
        let (a, b) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
        if a.lcm(b).degree() == a.degree() + b.degree() {
            continue;
        }
        let r = remainder(&s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    interreduce(g)
}

pub fn interreduce(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    // minimal
    let mut k = 0;
    while k < g.len() {
        let lm = g[k].leading_monomial().unwrap().clone();
        let dominated = g.iter().enumerate().any(|(j, h)| {
            let hm = h.leading_monomial().unwrap();
            j != k && hm.divides(&lm) && (hm != &lm || j < k)
        });
        if dominated {
            g.remove(k);
        } else {
            k += 1;
        }
    }
    let mut out = Vec::with_capacity(g.len());
    for k in 0..g.len() {
        let others: Vec<Polynomial> = g.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
        let (lm, lc) = g[k].leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let head = Polynomial::term(g[k].ring(), lm, lc.clone());
        let tail = &g[k] - &head;
        let r = &head + &remainder(&tail, &others);
        out.push(r.scale(&(Rational::from_integer(1.into()) / lc)));
    }
    let order = out[0].order().clone();
    out.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}

/// Small deterministic generator for random systems (xorshift).
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }
}

/// A random polynomial with up to `terms` terms of degree at most `deg`.
pub fn random_poly(ring: &Arc<Ring>, rng: &mut Rng, terms: usize, deg: u16) -> Polynomial {
    let n = ring.nvars();
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u16; n];
        let mut left = rng.range(0, deg as i64) as u16;
        while left > 0 {
            let v = rng.range(0, n as i64 - 1) as usize;
            e[v] += 1;
            left -= 1;
        }
        let c = rng.range(-9, 9);
        if c != 0 {
            out.push((Monomial::from_exponents(e), Rational::from_integer(c.into())));
        }
    }
    Polynomial::from_terms(ring, out).unwrap()
}

/// Product of `x_i - r_i` style shifts: a random zero-dimensional system
/// made of one univariate polynomial per variable plus random mixing.
pub fn random_zero_dim(ring: &Arc<Ring>, rng: &mut Rng) -> Vec<Polynomial> {
    let n = ring.nvars();
    let mut gens = Vec::new();
    for v in 0..n {
        let x = Polynomial::var(ring, v);
        let deg = rng.range(1, 3) as u32;
        let mut p = x.pow(deg);
        let extra = random_poly(ring, rng, 3, (deg as u16).saturating_sub(1).max(1));
        let extra: Vec<_> = extra.terms().iter().filter(|(m, _)| m.degree() < deg).cloned().collect();
        p = &p + &Polynomial::from_terms(ring, extra).unwrap();
        gens.push(p);
    }
    // mix: add random combinations so the generators are not triangular
    let k = rng.range(0, 2);
    for _ in 0..k {
        let a = rng.range(0, n as i64 - 1) as usize;
        let b = rng.range(0, n as i64 - 1) as usize;
        if a == b {
            continue;
        }
        let m = random_poly(ring, rng, 2, 1);
        let mixed = &gens[a] + &(&m * &gens[b]);
        if !mixed.is_zero() && mixed.total_degree().unwrap() <= 3 {
            gens[a] = mixed;
        }
    }
    gens.retain(|p| !p.is_zero());
    gens
}

/// Univariate polynomial from `(degree, coefficient)` pairs.
pub fn sparse(var: &str, terms: &[(usize, i64)]) -> qes_core::unipoly::UniPoly {
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut c = vec![0i64; deg + 1];
    for &(d, a) in terms {
        c[d] += a;
    }
    qes_core::unipoly::UniPoly::from_ints(&c, var)
}

/// Reference secular polynomials, keyed by (q, N).
pub fn golden(q: usize, n: usize) -> Option<qes_core::unipoly::UniPoly> {
    let (var, terms): (&str, Vec<(usize, i64)>) = match (q, n) {
        (1, 3) => ("s", vec![(3, 1), (1, -4)]),
        (1, 4) => ("s", vec![(4, 1), (2, -10), (0, 9)]),
        (1, 5) => ("s", vec![(5, 1), (3, -20), (1, 64)]),
        (2, 3) => ("s", vec![(6, 1), (3, -7), (0, -8)]),
        (2, 4) => ("s", vec![(10, 1), (7, -27), (4, 27), (1, -729)]),
        (3, 3) => ("t", vec![(9, 1), (5, -12), (1, -64)]),
        (3, 4) => ("t", vec![(16, 1), (12, -68), (8, -442), (4, -50116), (0, 50625)]),
        (3, 5) => (
            "t",
            vec![
                (25, 1),
                (21, -260),
                (17, 7280),
                (13, -1039040),
                (9, -152089600),
                (5, 2030239744),
                (1, 10485760000),
            ],
        ),
        (3, 6) => (
            "t",
            vec![
                (36, 1),
                (32, -777),
                (28, 135716),
                (24, -17189460),
                (20, -3513570690),
                (16, -1198527160446),
                (12, 103857100871252),
                (8, 873415814269404),
                (4, 74500845455535625),
                (0, -75476916312890625),
            ],
        ),
        _ => return None,
    };
    Some(sparse(var, &terms))
}

pub const GOLDEN_CASES: [(usize, usize); 9] = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (3, 3), (3, 4), (3, 5), (3, 6)];

/// Integer roots of a monic integer polynomial, found by evaluating every
/// integer inside the Fujiwara bound.
pub fn brute_integer_roots(p: &qes_core::unipoly::UniPoly) -> Vec<i64> {
    let n = p.degree().unwrap();
    let lead = p.leading().unwrap().clone();
    let mut bound = 0f64;
    for i in 1..=n {
        let a = (p.coeff(n - i) / &lead).to_f64_lossy().abs();
        let b = if i == n { (a / 2.0).powf(1.0 / i as f64) } else { a.powf(1.0 / i as f64) };
        bound = bound.max(2.0 * b);
    }
    let b = bound.ceil() as i64 + 1;
    (-b..=b)
        .filter(|&x| p.eval(&Rational::from_integer(x.into())) == Rational::from_integer(0.into()))
        .collect()
}

trait Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl Lossy for Rational {
    fn to_f64_lossy(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_f64().unwrap()
    }
}

/// Multiplicative variables read straight off the definition: `x_i` is
/// multiplicative for `u` when no member agreeing with `u` on the earlier
/// variables has a larger `x_i` exponent.
pub fn multiplicative(lms: &[Monomial], precedence: &[usize]) -> Vec<Vec<bool>> {
    lms.iter()
        .map(|u| {
            let mut m = vec![false; precedence.len()];
            for (level, &v) in precedence.iter().enumerate() {
                let agree = |w: &&Monomial| precedence[..level].iter().all(|&p| w.exponent(p) == u.exponent(p));
                m[v] = lms.iter().filter(agree).all(|w| w.exponent(v) <= u.exponent(v));
            }
            m
        })
        .collect()
}

pub fn monomials_up_to(nvars: usize, deg: u16) -> Vec<Monomial> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u16>| {
                let used: u16 = e.iter().sum();
                (0..=deg - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

/// Every leading monomial of the ideal (up to a degree) has exactly one
/// Janet divisor among the basis heads, and non-members have none.
pub fn assert_janet_cover(heads: &[Monomial], gb: &[Polynomial], precedence: &[usize], deg: u16) {
    let mult = multiplicative(heads, precedence);
    let gb_heads: Vec<&Monomial> = gb.iter().map(|g| g.leading_monomial().unwrap()).collect();
    for w in monomials_up_to(precedence.len(), deg) {
        let member = gb_heads.iter().any(|h| h.divides(&w));
        let divisors = heads
            .iter()
            .zip(&mult)
            .filter(|(u, m)| {
                u.divides(&w) && (0..w.nvars()).all(|v| u.exponent(v) == w.exponent(v) || m[v])
            })
            .count();
        assert_eq!(divisors, usize::from(member), "monomial {w:?}");
    }
}

pub fn binomial(n: usize, k: usize) -> num_bigint::BigInt {
    if k > n {
        return num_bigint::BigInt::from(0);
    }
    (0..k).fold(num_bigint::BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of `(1+u)^(N-j) (1-u)^(j-1)`.
pub fn q1_kernel_oracle(n: usize, j: usize) -> Vec<num_bigint::BigInt> {
    (0..n)
        .map(|m| {
            (0..=m)
                .map(|i| {
                    let sign = if (m - i) % 2 == 0 { 1 } else { -1 };
                    binomial(n - j, i) * binomial(j - 1, m - i) * sign
                })
                .sum()
        })
        .collect()
}
