//! Coefficient vectors annihilated by the compact system at fixed `s`.

use num_bigint::BigInt;

use super::field::Field;
use super::large_d::{stencil_constant, stencil_diagonal, MagyariSystem, Normalization};
use super::MagyariError;
use crate::poly::Rational;

/// Row `r` of the system applied to `p`, with `s` substituted.
fn row_value<F: Field>(sys: &MagyariSystem, s: &[F], p: &[Option<F>], r: usize, skip: Option<usize>) -> Option<F> {
    let unit = &s[0];
    let mut acc = unit.from_rational(Rational::from_integer(0.into()));
    for c in 0..sys.n {
        if Some(c) == skip {
            continue;
        }
        let mut coeff = unit.from_rational(Rational::from_integer(0.into()));
        if let Some(k) = stencil_diagonal(sys.q, sys.n, r, c) {
            coeff = coeff.add(&s[k - 1]);
        }
        if let Some(v) = stencil_constant(sys.q, sys.n, r, c) {
            coeff = coeff.add(&unit.from_rational(Rational::from_integer(v.into())));
        }
        if !coeff.is_zero() {
            acc = acc.add(&coeff.mul(p[c].as_ref()?));
        }
    }
    Some(acc)
}

/// The unique `p` with the system's normalization that solves every row at
/// the given `s_1..s_q`, or `InconsistentAssignment` naming the first
/// violated row.
pub fn kernel_vector<F: Field>(sys: &MagyariSystem, s: &[F]) -> Result<Vec<F>, MagyariError> {
    if s.len() != sys.q {
        return Err(MagyariError::Shape(format!("expected {} s-values, got {}", sys.q, s.len())));
    }
    let (q, n) = (sys.q, sys.n);
    let one = s[0].from_rational(Rational::from_integer(1.into()));
    let mut p: Vec<Option<F>> = vec![None; n];
    let checks: Vec<usize> = match sys.normalization {
        Normalization::First => {
            p[0] = Some(one);
            for r in 0..n - 1 {
                let rest = row_value(sys, s, &p, r, Some(r + 1)).expect("forward order");
                let pivot = s[0].from_rational(Rational::from_integer(((r + 1) as i64).into()));
                p[r + 1] = Some(rest.neg().div(&pivot).expect("nonzero pivot"));
            }
            (n - 1..n + q - 1).collect()
        }
        Normalization::Last => {
            p[n - 1] = Some(one);
            for r in (q..n + q - 1).rev() {
                let rest = row_value(sys, s, &p, r, Some(r - q)).expect("backward order");
                let pivot = s[0].from_rational(Rational::from_integer(((n + q - 1 - r) as i64).into()));
                p[r - q] = Some(rest.neg().div(&pivot).expect("nonzero pivot"));
            }
            (0..q.min(n + q - 1)).collect()
        }
    };
    for r in checks {
        if !row_value(sys, s, &p, r, None).expect("complete").is_zero() {
            return Err(MagyariError::InconsistentAssignment { row: r });
        }
    }
    Ok(p.into_iter().map(|x| x.expect("filled")).collect())
}

/// Coefficients of `(1+u)^(N-j) (1-u)^(j-1)`, the `q = 1` wavefunction at
/// `s = -N - 1 + 2j`.
pub fn q1_wavefunction_coeffs(n: usize, j: usize) -> Result<Vec<BigInt>, MagyariError> {
    if j == 0 || j > n {
        return Err(MagyariError::IndexOutOfRange { index: j, max: n });
    }
    let mut c = vec![BigInt::from(1)];
    let mul = |c: &mut Vec<BigInt>, sign: i32| {
        c.push(BigInt::from(0));
        for i in (1..c.len()).rev() {
            let prev = c[i - 1].clone();
            c[i] += prev * sign;
        }
    };
    for _ in 0..n - j {
        mul(&mut c, 1);
    }
    for _ in 0..j - 1 {
        mul(&mut c, -1);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magyari::build_large_d_system;
    use crate::poly::rat;

    #[test]
    fn sextic_kernels() {
        let sys = build_large_d_system(1, 3, Normalization::First).unwrap();
        assert_eq!(kernel_vector(&sys, &[rat(-2)]).unwrap(), vec![rat(1), rat(2), rat(1)]);
        assert_eq!(kernel_vector(&sys, &[rat(0)]).unwrap(), vec![rat(1), rat(0), rat(-1)]);
        assert!(matches!(
            kernel_vector(&sys, &[rat(1)]),
            Err(MagyariError::InconsistentAssignment { .. })
        ));
    }

    #[test]
    fn last_normalization_agrees_up_to_scale() {
        let first = build_large_d_system(1, 3, Normalization::First).unwrap();
        let last = build_large_d_system(1, 3, Normalization::Last).unwrap();
        let a = kernel_vector(&first, &[rat(2)]).unwrap();
        let b = kernel_vector(&last, &[rat(2)]).unwrap();
        let k = &a[2];
        assert!(a.iter().zip(&b).all(|(x, y)| x == &(y * k)));
    }

    #[test]
    fn wavefunction_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(q1_wavefunction_coeffs(3, 1).unwrap(), ints(&[1, 2, 1]));
        assert_eq!(q1_wavefunction_coeffs(2, 2).unwrap(), ints(&[1, -1]));
        assert_eq!(q1_wavefunction_coeffs(1, 1).unwrap(), ints(&[1]));
        assert!(q1_wavefunction_coeffs(3, 4).is_err());
    }
}
