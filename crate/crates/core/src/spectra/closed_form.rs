//! Closed-form real spectra and the q = 5 factor families.

use serde::{Deserialize, Serialize};

use super::SpectraError;
use crate::poly::Rational;
use crate::unipoly::UniPoly;

/// One predicted root with its index data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedRoot {
    pub value: i64,
    pub j: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// At q = 3, the companion value of the middle diagonal `s`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub companion: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub q: usize,
    #[serde(rename = "N")]
    pub n: usize,
    /// Indexed predictions, in index order.
    pub roots: Vec<PredictedRoot>,
}

impl SpectrumTable {
    /// Distinct predicted values, ascending.
    pub fn values(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.roots.iter().map(|r| r.value).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Predicted values of diagonal unknown `s_k` (1-based), where the
    /// formulas say anything about it.
    pub fn values_for(&self, k: usize) -> Option<Vec<i64>> {
        match (self.q, k) {
            (1, 1) | (2, 1) | (2, 2) | (3, 1) | (3, 3) | (5, 5) => Some(self.values()),
            (3, 2) => {
                let mut v: Vec<i64> = self.roots.iter().filter_map(|r| r.companion).collect();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
            _ => None,
        }
    }

    /// At q = 3: companion `s` values paired with a given `t`.
    pub fn companions_of(&self, t: i64) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .roots
            .iter()
            .filter(|r| r.value == t)
            .filter_map(|r| r.companion)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Closed forms: q = 1 `-N-1+2j`; q = 2 `N+2-3j`,
/// `j <= (N+1)/2`; q = 3 `t = -N-3+2j+2k`, `k <= N+2-2j`, with
/// `s = N+3-4j`; q = 5 `-N+1 ..= N-1`.
pub fn closed_form_spectrum(q: usize, n: usize) -> Result<SpectrumTable, SpectraError> {
    let ni = n as i64;
    let one = |value, j| PredictedRoot { value, j, k: None, companion: None };
    let roots = match q {
        1 => (1..=n).map(|j| one(-ni - 1 + 2 * j as i64, j)).collect(),
        2 => (1..=(n + 1) / 2).map(|j| one(ni + 2 - 3 * j as i64, j)).collect(),
        3 => {
            let mut v = Vec::new();
            for j in 1..=(n + 1) / 2 {
                let kmax = n + 2 - 2 * j;
                for k in 1..=kmax {
                    v.push(PredictedRoot {
                        value: -ni - 3 + 2 * j as i64 + 2 * k as i64,
                        j,
                        k: Some(k),
                        companion: Some(ni + 3 - 4 * j as i64),
                    });
                }
            }
            v
        }
        5 => (0..2 * n - 1).map(|i| one(-ni + 1 + i as i64, i + 1)).collect(),
        _ => return Err(SpectraError::NoClosedForm(q)),
    };
    Ok(SpectrumTable { q, n, roots })
}

/// Whether every exponent of `p` lies in one residue class mod `q+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportCheck {
    pub modulus: usize,
    pub residue: Option<usize>,
    pub pass: bool,
}

pub fn secular_support_check(p: &UniPoly, q: usize) -> SupportCheck {
    let modulus = q + 1;
    let mut residues: Vec<usize> = p.support().into_iter().map(|e| e % modulus).collect();
    residues.dedup();
    residues.sort_unstable();
    residues.dedup();
    let pass = residues.len() == 1;
    SupportCheck {
        modulus,
        residue: pass.then(|| residues[0]),
        pass,
    }
}

/// The q = 5 factor families in `x = s_5`.
#[derive(Clone, Debug)]
pub struct Q5Families {
    pub n: usize,
    /// `x prod_{k<N} (x^2 - k^2)`: the real roots.
    pub p1: UniPoly,
    /// `prod (x^2 - 3kx + 3k^2)(x^2 + 3k^2)(x^2 + 3kx + 3k^2)`.
    pub p2: UniPoly,
    /// `prod_{k<N} (x^2 - kx + k^2)(x^2 + kx + k^2)`.
    pub p3: UniPoly,
    pub p4_degree: usize,
}

impl Q5Families {
    pub fn product(&self) -> UniPoly {
        self.p1.mul(&self.p2).mul(&self.p3)
    }

    pub fn total_degree(&self) -> usize {
        3 * self.n * self.n - 3 * self.n + 1
    }
}

/// Families known for N = 6 (P2 over k = 1, 2) and N = 7 (one more P2
/// block at k = 3, P1 and P3 extended by k = 6).
pub fn q5_factor_families(n: usize) -> Result<Q5Families, SpectraError> {
    let p2_blocks = match n {
        6 => 2,
        7 => 3,
        _ => return Err(SpectraError::UnsupportedN(n)),
    };
    let x = "x";
    let quad = |a: i64, b: i64| UniPoly::from_ints(&[b, a, 1], x);
    let mut p1 = UniPoly::from_ints(&[0, 1], x);
    let mut p3 = UniPoly::constant(Rational::from_integer(1.into()), x);
    for k in 1..n as i64 {
        p1 = p1.mul(&quad(0, -k * k));
        p3 = p3.mul(&quad(-k, k * k)).mul(&quad(k, k * k));
    }
    let mut p2 = UniPoly::constant(Rational::from_integer(1.into()), x);
    for k in 1..=p2_blocks as i64 {
        p2 = p2
            .mul(&quad(-3 * k, 3 * k * k))
            .mul(&quad(0, 3 * k * k))
            .mul(&quad(3 * k, 3 * k * k));
    }
    let total = 3 * n * n - 3 * n + 1;
    let used = p1.degree().unwrap() + p2.degree().unwrap() + p3.degree().unwrap();
    Ok(Q5Families {
        n,
        p1,
        p2,
        p3,
        p4_degree: total - used,
    })
}
