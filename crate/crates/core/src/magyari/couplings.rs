//! The two parametrizations of the potential `g_0 r^2 + ... + g_{2q} r^{4q+2}`.

use num_traits::{Signed, Zero};

use super::MagyariError;
use crate::poly::Rational;

/// Potential couplings in both forms: `g[j]` for `j = 0..=2q`, and the
/// superpotential-like form `big_g[j]` (`j < q`) with `alpha[j]` (`j <= q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialParams {
    pub q: usize,
    pub g: Vec<Rational>,
    pub big_g: Vec<Rational>,
    pub alpha: Vec<Rational>,
}

impl PotentialParams {
    pub fn gamma(&self) -> &Rational {
        &self.alpha[self.q]
    }

    pub fn from_alpha(big_g: Vec<Rational>, alpha: Vec<Rational>) -> Result<Self, MagyariError> {
        let q = alpha.len().checked_sub(1).ok_or(MagyariError::Shape("alpha is empty".into()))?;
        if big_g.len() != q {
            return Err(MagyariError::Shape(format!("expected {q} G couplings, got {}", big_g.len())));
        }
        if !alpha[q].is_positive() {
            return Err(MagyariError::NonPositiveLeadingCoupling);
        }
        let g = g_from_alpha(&big_g, &alpha);
        Ok(PotentialParams { q, g, big_g, alpha })
    }

    pub fn from_g(g: Vec<Rational>) -> Result<Self, MagyariError> {
        if g.len() % 2 == 0 {
            return Err(MagyariError::Shape(format!("need 2q+1 couplings, got {}", g.len())));
        }
        let q = (g.len() - 1) / 2;
        let (big_g, alpha) = alpha_from_g(&g)?;
        Ok(PotentialParams { q, g, big_g, alpha })
    }
}

/// Convolution coefficient `sum_{i+i'=j} alpha_i alpha_i'`.
fn square_coeff(alpha: &[Rational], j: usize) -> Rational {
    let q = alpha.len() - 1;
    let mut acc = Rational::zero();
    for i in j.saturating_sub(q)..=j.min(q) {
        acc += &alpha[i] * &alpha[j - i];
    }
    acc
}

/// `g_j = sum_{i+i'=j} alpha_i alpha_i' + G_j`, with the extra `alpha_0^2`
/// in `g_0` that the sextic case fixes (`g_0 = 2 alpha_0^2 + G_0`).
pub fn g_from_alpha(big_g: &[Rational], alpha: &[Rational]) -> Vec<Rational> {
    let q = alpha.len() - 1;
    (0..=2 * q)
        .map(|j| {
            let mut v = square_coeff(alpha, j);
            if j < q {
                v += &big_g[j];
            }
            if j == 0 {
                v += &alpha[0] * &alpha[0];
            }
            v
        })
        .collect()
}

/// Inverse of [`g_from_alpha`]: a triangular solve from the top coupling
/// down. Needs `g_{2q}` to be the square of a positive rational.
pub fn alpha_from_g(g: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>), MagyariError> {
    let q = (g.len() - 1) / 2;
    let top = &g[2 * q];
    if !top.is_positive() {
        return Err(MagyariError::NonPositiveLeadingCoupling);
    }
    let gamma = rational_sqrt(top).ok_or_else(|| MagyariError::NotASquare(top.to_string()))?;
    let mut alpha = vec![Rational::zero(); q + 1];
    alpha[q] = gamma;
    let two_gamma = &alpha[q] * Rational::from_integer(2.into());
    for j in (0..q).rev() {
        // g_{q+j} = 2 alpha_j alpha_q + (terms with both indices above j)
        let mut rest = Rational::zero();
        for i in (j + 1)..q {
            let k = q + j - i;
            if k > j && k < q {
                rest += &alpha[i] * &alpha[k];
            }
        }
        alpha[j] = (&g[q + j] - rest) / &two_gamma;
    }
    let big_g = (0..q)
        .map(|j| {
            let mut v = &g[j] - square_coeff(&alpha, j);
            if j == 0 {
                v -= &alpha[0] * &alpha[0];
            }
            v
        })
        .collect();
    Ok((big_g, alpha))
}

pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}
