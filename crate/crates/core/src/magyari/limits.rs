//! Symbolic checks tying the finite-D matrix to the compact system.

use num_traits::Zero;

use super::couplings::g_from_alpha;
use super::finite_d::{build_finite_d_matrix, last_row_coupling};
use super::large_d::{stencil_constant, stencil_diagonal};
use crate::poly::{Monomial, OrderKind, Polynomial, Rational, Ring};

/// Substitute `D = 2 gamma mu^(q+1)`, `gamma = a_q` and the rescaled
/// couplings into the trimmed finite-D matrix, scale entry `(r, c)` by
/// `mu^(1+r-c)` (the `h_n = p_n / mu^n` substitution plus a row factor) and
/// check that the top power `mu^(q+1)` carries `4 gamma` times the compact
/// stencil while every other term has lower degree in `mu`.
pub fn check_large_d_limit(q: usize, n: usize) -> Result<(), String> {
    let m = build_finite_d_matrix(q, n).trimmed();
    let mut vars = vec!["mu".to_string(), "L".to_string()];
    vars.extend((0..=q).map(|k| format!("a{k}")));
    vars.extend((1..=q).map(|k| format!("s{k}")));
    let ring = Ring::new(vars, OrderKind::Lex);
    let v = |name: &str| Polynomial::named(&ring, name);
    let mu = v("mu");
    let gamma = v(&format!("a{q}"));
    let int = |k: i64| Polynomial::from_int(&ring, k);
    let d = &(&gamma * &mu.pow(q as u32 + 1)) * &int(2);
    let tau = |k: usize| -> Polynomial {
        // tau / mu^k with tau = 4 gamma mu^q
        &(&gamma * &mu.pow((q - k) as u32)) * &int(4)
    };
    let images: Vec<Polynomial> = m
        .ring
        .vars()
        .iter()
        .map(|name| match name.as_str() {
            "E" => &(&v("a0") * &d) + &(&tau(0) * &v("s1")),
            "L" => v("L"),
            "D" => d.clone(),
            a if a.starts_with('a') => v(a),
            g => {
                // g_{k-2} = -a_{k-1} D - tau / mu^(k-1) s_k
                let j: usize = g[1..].parse().expect("coupling index");
                if j + 1 == q {
                    // already eliminated by the last-row constraint
                    return Polynomial::zero(&ring);
                }
                let k = j + 2;
                -&(&(&v(&format!("a{}", k - 1)) * &d) + &(&tau(k - 1) * &v(&format!("s{k}"))))
            }
        })
        .collect();
    let top = q as u16 + 1;
    for r in 0..n + q - 1 {
        for c in 0..n {
            let entry = m.entry(r, c).compose(&ring, &images).map_err(|e| e.to_string())?;
            if r + 1 < c {
                if !entry.is_zero() {
                    return Err(format!("entry ({r},{c}) outside the band"));
                }
                continue;
            }
            let scaled = &entry * &mu.pow((1 + r - c) as u32);
            let mut lead = Vec::new();
            for (mono, coef) in scaled.terms() {
                let e = mono.exponent(0);
                if e > top {
                    return Err(format!("entry ({r},{c}) grows faster than mu^{top}"));
                }
                if e == top {
                    let mut ex = mono.exponents().to_vec();
                    ex[0] = 0;
                    lead.push((Monomial::from_exponents(ex), coef.clone()));
                }
            }
            let lead = Polynomial::from_terms(&ring, lead).map_err(|e| e.to_string())?;
            let mut want = Polynomial::from_int(&ring, stencil_constant(q, n, r, c).unwrap_or(0));
            if let Some(k) = stencil_diagonal(q, n, r, c) {
                want = &want + &v(&format!("s{k}"));
            }
            let want = &(&want * &gamma) * &int(4);
            if lead != want {
                return Err(format!("entry ({r},{c}): leading part {lead}, expected {want}"));
            }
        }
    }
    Ok(())
}

/// At `q = 1` the last-row constraint, rewritten in `(G_0, alpha)` through
/// the coupling map, is `G_0 = -alpha_0^2 - alpha_1 (4N + 2 ell + 1)`.
/// Checked as a polynomial identity and at sample rational points.
pub fn check_singh_constraint(n: usize) -> Result<(), String> {
    let g0 = last_row_coupling(1, n);
    let ring = g0.ring().clone();
    let v = |name: &str| Polynomial::named(&ring, name);
    let int = |k: i64| Polynomial::from_int(&ring, k);
    let (a0, a1) = (v("a0"), v("a1"));
    // 2 ell = 2L + D - 3
    let two_ell = &(&(&v("L") * &int(2)) + &v("D")) - &int(3);
    let singh = &(-&(&a0 * &a0)) - &(&a1 * &(&(&int(4 * n as i64) + &two_ell) + &int(1)));
    let big_g0 = &g0 - &(&(&a0 * &a0) * &int(2));
    if big_g0 != singh {
        return Err(format!("G0 = {big_g0}, expected {singh}"));
    }
    let idx = |name: &str| ring.var_index(name).expect("finite-D symbol");
    for (alpha0, alpha1, l, d) in [(1, 2, 0, 3), (-3, 1, 2, 7), (5, 4, 1, 10)] {
        let r = |x: i64| Rational::from_integer(x.into());
        let mut point = vec![Rational::zero(); ring.nvars()];
        point[idx("a0")] = r(alpha0);
        point[idx("a1")] = r(alpha1);
        point[idx("L")] = r(l);
        point[idx("D")] = r(d);
        let big = singh.eval(&point).map_err(|e| e.to_string())?;
        let g = g_from_alpha(&[big], &[r(alpha0), r(alpha1)]);
        if g[0] != g0.eval(&point).map_err(|e| e.to_string())? {
            return Err(format!("coupling map disagrees at alpha=({alpha0},{alpha1}), L={l}, D={d}"));
        }
    }
    Ok(())
}

/// At `q = 0` the recurrence stops at row `N-1` exactly when
/// `E = alpha_0 (4(N-1) + 2 ell + 3)`, twice the oscillator level
/// `omega (2n + ell + 3/2)` with `n = N-1`, `omega = alpha_0`: the matrix
/// energy is the oscillator energy in units where `E = 2 epsilon`.
pub fn q0_terminating_energy(n: usize, alpha0: &Rational, ell: &Rational) -> Rational {
    alpha0 * (Rational::from_integer((4 * (n as i64 - 1) + 3).into()) + ell * Rational::from_integer(2.into()))
}
