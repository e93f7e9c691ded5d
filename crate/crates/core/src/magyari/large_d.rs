//! The compact large-dimension system and its rescaling.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::MagyariError;
use crate::poly::json::PolyJson;
use crate::poly::{Monomial, MonomialOrder, OrderKind, PolyError, Polynomial, Rational, Ring};

/// Which wavefunction coefficient is fixed to 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    #[default]
    First,
    Last,
}

impl Normalization {
    pub fn index(self, n: usize) -> usize {
        match self {
            Normalization::First => 0,
            Normalization::Last => n - 1,
        }
    }
}

impl std::str::FromStr for Normalization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "first" | "p0" => Ok(Normalization::First),
            "last" => Ok(Normalization::Last),
            other => Err(format!("unknown normalization `{other}` (use first or last)")),
        }
    }
}

/// Names of the diagonal unknowns: `s` for q=1, `s, t` for q=2,
/// `r, s, t` for q=3 and `s1..sq` beyond.
pub fn s_names(q: usize) -> Vec<String> {
    match q {
        1 => vec!["s".into()],
        2 => vec!["s".into(), "t".into()],
        3 => vec!["r".into(), "s".into(), "t".into()],
        _ => (1..=q).map(|k| format!("s{k}")).collect(),
    }
}

/// Entry `(r, c)` of the integer stencil with the diagonal unknowns left
/// out: `c = r+1` carries `r+1`, `c = r-q` carries `N+q-1-r`.
pub fn stencil_constant(q: usize, n: usize, r: usize, c: usize) -> Option<i64> {
    if c == r + 1 && c < n {
        Some((r + 1) as i64)
    } else if r >= q && c == r - q {
        Some((n + q - 1 - r) as i64)
    } else {
        None
    }
}

/// Which `s_k` (1-based) sits at `(r, c)`, if any: `c = r - (k-1)`.
pub fn stencil_diagonal(q: usize, n: usize, r: usize, c: usize) -> Option<usize> {
    if c < n && c <= r && r - c < q {
        Some(r - c + 1)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct MagyariSystem {
    pub q: usize,
    pub n: usize,
    pub normalization: Normalization,
    pub ring: Arc<Ring>,
    /// Indices into `ring` of `s_1..s_q`.
    pub s_vars: Vec<usize>,
    /// Index into `ring` of `p_c`, `None` for the normalized coefficient.
    pub p_vars: Vec<Option<usize>>,
    pub equations: Vec<Polynomial>,
}

impl MagyariSystem {
    pub fn unknowns(&self) -> usize {
        self.ring.nvars()
    }

    pub fn s_name(&self, k: usize) -> &str {
        &self.ring.vars()[self.s_vars[k - 1]]
    }

    /// Index of the named diagonal unknown, from its name or `s<k>`.
    pub fn s_index(&self, name: &str) -> Option<usize> {
        if let Some(i) = (1..=self.q).find(|&k| self.s_name(k) == name) {
            return Some(i);
        }
        let k: usize = name.strip_prefix('s')?.parse().ok()?;
        (1..=self.q).contains(&k).then_some(k)
    }
}

/// The `N+q-1` equations of the compact system over `p`'s and `s`'s, with
/// one `p` fixed to 1. Variables are ordered `p`'s first, then `s_1..s_q`.
pub fn build_large_d_system(q: usize, n: usize, normalization: Normalization) -> Result<MagyariSystem, MagyariError> {
    if q == 0 || n == 0 {
        return Err(MagyariError::Shape(format!("need q >= 1 and N >= 1, got q={q}, N={n}")));
    }
    let fixed = normalization.index(n);
    let mut vars = Vec::new();
    let mut p_vars = vec![None; n];
    for (c, slot) in p_vars.iter_mut().enumerate() {
        if c != fixed {
            *slot = Some(vars.len());
            vars.push(format!("p{c}"));
        }
    }
    let s_vars: Vec<usize> = (0..q).map(|k| vars.len() + k).collect();
    vars.extend(s_names(q));
    let ring = Ring::new(vars, OrderKind::DegRevLex);
    let nv = ring.nvars();
    let mut equations = Vec::with_capacity(n + q - 1);
    for r in 0..n + q - 1 {
        let mut terms = Vec::new();
        for c in 0..n {
            let mut e = vec![0u16; nv];
            if let Some(v) = p_vars[c] {
                e[v] = 1;
            }
            if let Some(k) = stencil_diagonal(q, n, r, c) {
                let mut e = e.clone();
                e[s_vars[k - 1]] += 1;
                terms.push((Monomial::from_exponents(e), Rational::one()));
            }
            if let Some(v) = stencil_constant(q, n, r, c) {
                terms.push((Monomial::from_exponents(e), Rational::from_integer(v.into())));
            }
        }
        equations.push(Polynomial::from_terms(&ring, terms)?);
    }
    Ok(MagyariSystem {
        q,
        n,
        normalization,
        ring,
        s_vars,
        p_vars,
        equations,
    })
}

/// Lex order on the system's variables with `last` least, the other `s`'s
/// above it and every `p` above all `s`'s.
pub fn elimination_order(sys: &MagyariSystem, secular: usize) -> MonomialOrder {
    let mut prec: Vec<usize> = sys.p_vars.iter().flatten().copied().collect();
    for k in 1..=sys.q {
        if k != secular {
            prec.push(sys.s_vars[k - 1]);
        }
    }
    prec.push(sys.s_vars[secular - 1]);
    MonomialOrder::with_precedence(OrderKind::Lex, prec).expect("permutation")
}

/// Serialized system: the equations in the shared polynomial schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub q: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub normalization: Normalization,
    pub vars: Vec<String>,
    pub s_vars: Vec<String>,
    pub equations: Vec<PolyJson>,
}

impl SystemJson {
    pub fn from_system(sys: &MagyariSystem) -> Self {
        SystemJson {
            q: sys.q,
            n: sys.n,
            normalization: sys.normalization,
            vars: sys.ring.vars().to_vec(),
            s_vars: (1..=sys.q).map(|k| sys.s_name(k).to_string()).collect(),
            equations: sys.equations.iter().map(PolyJson::from_poly).collect(),
        }
    }

    /// Rebuild and check the stored equations against a fresh build.
    pub fn to_system(&self) -> Result<MagyariSystem, MagyariError> {
        let sys = build_large_d_system(self.q, self.n, self.normalization)?;
        if sys.ring.vars() != self.vars.as_slice() {
            return Err(MagyariError::Poly(PolyError::Parse("variable list does not match (q, N)".into())));
        }
        let eqs = self
            .equations
            .iter()
            .map(|e| e.to_poly_in(&sys.ring))
            .collect::<Result<Vec<_>, _>>()?;
        if eqs != sys.equations {
            return Err(MagyariError::Shape("equations differ from the generated system".into()));
        }
        Ok(sys)
    }
}

/// Exact rescaling determined by `gamma` and `mu`: `D = 2 gamma mu^(q+1)`
/// and `tau = 4 gamma mu^q`, which agree with `mu = (D / 2 gamma)^(1/(q+1))`
/// and `tau = (2^(q+2) D^q gamma)^(1/(q+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescaleMap {
    pub q: usize,
    pub gamma: Rational,
    pub mu: Rational,
}

impl RescaleMap {
    pub fn new(q: usize, gamma: Rational, mu: Rational) -> Result<Self, MagyariError> {
        if gamma <= Rational::zero() || mu <= Rational::zero() {
            return Err(MagyariError::NonPositiveLeadingCoupling);
        }
        Ok(RescaleMap { q, gamma, mu })
    }

    pub fn dimension(&self) -> Rational {
        Rational::from_integer(2.into()) * &self.gamma * pow(&self.mu, self.q + 1)
    }

    pub fn tau(&self) -> Rational {
        Rational::from_integer(4.into()) * &self.gamma * pow(&self.mu, self.q)
    }

    /// `s_k` from `g_{k-2}` for `k = 1..q` (index 0 of `g` is `g_{-1}`).
    pub fn rescale(&self, alpha: &[Rational], g: &[Rational]) -> Vec<Rational> {
        let (d, tau) = (self.dimension(), self.tau());
        (1..=self.q)
            .map(|k| -(&g[k - 1] + &alpha[k - 1] * &d) * pow(&self.mu, k - 1) / &tau)
            .collect()
    }

    /// `g_{k-2} = -alpha_{k-1} D - tau / mu^(k-1) s_k`.
    pub fn unscale(&self, alpha: &[Rational], s: &[Rational]) -> Vec<Rational> {
        let (d, tau) = (self.dimension(), self.tau());
        (1..=self.q)
            .map(|k| -(&alpha[k - 1] * &d) - &tau / pow(&self.mu, k - 1) * &s[k - 1])
            .collect()
    }

    /// `E = -g_{-1} = alpha_0 D + tau s_1`.
    pub fn energy(&self, alpha0: &Rational, s1: &Rational) -> Rational {
        alpha0 * self.dimension() + self.tau() * s1
    }
}

/// Floating-point `mu` and `tau` for arbitrary `D`.
pub fn mu_tau_f64(q: usize, d: f64, gamma: f64) -> (f64, f64) {
    let e = 1.0 / (q as f64 + 1.0);
    let mu = (d / (2.0 * gamma)).powf(e);
    let tau = (2f64.powi(q as i32 + 2) * d.powi(q as i32) * gamma).powf(e);
    (mu, tau)
}

fn pow(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}
