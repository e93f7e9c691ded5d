//! The banded finite-dimension matrix acting on the coefficients `h_n`.

use std::sync::Arc;

use crate::poly::{OrderKind, Polynomial, Rational, Ring};

/// Dimension data. `None` keeps the quantity symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDParams {
    pub n: usize,
    pub l: Option<Rational>,
    pub d: Option<Rational>,
}

impl FiniteDParams {
    /// Angular parameter `ell = L + (D - 3)/2` when both are numeric.
    pub fn ell(&self) -> Option<Rational> {
        let (l, d) = (self.l.as_ref()?, self.d.as_ref()?);
        Some(l + (d - Rational::from_integer(3.into())) / Rational::from_integer(2.into()))
    }
}

/// Symbols of the finite-D matrix: `E`, `L`, `D`, `a0..aq`, `g0..g{q-1}`.
pub fn finite_d_ring(q: usize) -> Arc<Ring> {
    let mut vars = vec!["E".to_string(), "L".to_string(), "D".to_string()];
    vars.extend((0..=q).map(|k| format!("a{k}")));
    vars.extend((0..q).map(|k| format!("g{k}")));
    Ring::new(vars, OrderKind::DegRevLex)
}

/// Entries of the `(N+q) x N` matrix, row-major; absent entries are zero.
#[derive(Clone, Debug)]
pub struct FiniteDMatrix {
    pub q: usize,
    pub n: usize,
    pub ring: Arc<Ring>,
    pub rows: Vec<Vec<Polynomial>>,
}

struct Sym {
    ring: Arc<Ring>,
    q: usize,
}

impl Sym {
    fn var(&self, name: &str) -> Polynomial {
        Polynomial::named(&self.ring, name)
    }
    fn int(&self, v: i64) -> Polynomial {
        Polynomial::from_int(&self.ring, v)
    }
    fn alpha(&self, k: usize) -> Polynomial {
        self.var(&format!("a{k}"))
    }
    /// `4n + 2L + D - 2k`.
    fn band(&self, n: usize, k: usize) -> Polynomial {
        &(&self.int(4 * n as i64 - 2 * k as i64) + &self.var("L").scale(&Rational::from_integer(2.into()))) + &self.var("D")
    }
    fn alpha_convolution(&self, k: usize) -> Polynomial {
        let mut acc = self.int(0);
        for i in 0..k {
            acc = &acc + &(&self.alpha(i) * &self.alpha(k - 1 - i));
        }
        acc
    }
}

/// `C_n = (2n+2)(2n+2L+D)`.
fn c_elem(s: &Sym, n: usize) -> Polynomial {
    let lin = &(&s.int(2 * n as i64) + &s.var("L").scale(&Rational::from_integer(2.into()))) + &s.var("D");
    lin.scale(&Rational::from_integer((2 * n as i64 + 2).into()))
}

/// `B_n = E - a0 (4n + 2L + D)`.
fn b_elem(s: &Sym, n: usize) -> Polynomial {
    &s.var("E") - &(&s.alpha(0) * &s.band(n, 0))
}

/// `A_n^(k) = -g_{k-1} - a_k (4n + 2L + D - 2k) + sum_{i<k} a_i a_{k-1-i}`.
fn a_elem(s: &Sym, n: usize, k: usize) -> Polynomial {
    let g = s.var(&format!("g{}", k - 1));
    &(&s.alpha_convolution(k) - &g) - &(&s.alpha(k) * &s.band(n, k))
}

/// The full matrix with `L` and `D` symbolic: row `n` holds `C_n` at
/// column `n+1`, `B_n` at column `n` and `A_n^(k)` at column `n-k`.
pub fn build_finite_d_matrix(q: usize, n: usize) -> FiniteDMatrix {
    let s = Sym { ring: finite_d_ring(q), q };
    let zero = Polynomial::zero(&s.ring);
    let mut rows = vec![vec![zero; n]; n + s.q];
    for (r, row) in rows.iter_mut().enumerate() {
        if r + 1 < n {
            row[r + 1] = c_elem(&s, r);
        }
        if r < n {
            row[r] = b_elem(&s, r);
        }
        for k in 1..=q {
            if r >= k && r - k < n {
                row[r - k] = a_elem(&s, r, k);
            }
        }
    }
    FiniteDMatrix { q, n, ring: s.ring, rows }
}

/// Coupling `g_{q-1}` that makes the last row vanish identically:
/// `-a_q (4(N+q-1) + 2L + D - 2q) + sum_{i<q} a_i a_{q-1-i}`.
pub fn last_row_coupling(q: usize, n: usize) -> Polynomial {
    let s = Sym { ring: finite_d_ring(q), q };
    &s.alpha_convolution(q) - &(&s.alpha(q) * &s.band(n + q - 1, q))
}

impl FiniteDMatrix {
    /// Impose the last-row constraint: substitute `g_{q-1}` and drop the
    /// final row, leaving the `(N+q-1) x N` matrix. The lowest band becomes
    /// `4 a_q (N+q-1-n)`.
    pub fn trimmed(&self) -> FiniteDMatrix {
        let ring = &self.ring;
        let images: Vec<Polynomial> = ring
            .vars()
            .iter()
            .map(|v| {
                if self.q > 0 && *v == format!("g{}", self.q - 1) {
                    last_row_coupling(self.q, self.n)
                } else {
                    Polynomial::named(ring, v)
                }
            })
            .collect();
        let rows = self.rows[..self.rows.len() - 1]
            .iter()
            .map(|row| row.iter().map(|e| e.compose(ring, &images).expect("same ring")).collect())
            .collect();
        FiniteDMatrix {
            q: self.q,
            n: self.n,
            ring: ring.clone(),
            rows,
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.rows[r][c]
    }
}
