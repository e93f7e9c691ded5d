mod common;

use common::{brute_integer_roots, golden, GOLDEN_CASES};
use qes_core::fglm::fglm_convert;
use qes_core::magyari::{build_large_d_system, elimination_order, Normalization};
use qes_core::poly::{poly_reduce, Polynomial, Rational};
use qes_core::spectra::{
    closed_form_spectrum, compute_spectrum, q5_factor_families, reduced_basis, verify_spectrum, SecularReport,
    SpectrumOptions, VerdictStatus,
};
use qes_core::unipoly::{isolate_real_roots_with, real_root_count, UniPoly};

fn spectrum(q: usize, n: usize) -> SecularReport {
    compute_spectrum(q, n, &SpectrumOptions::default()).unwrap()
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

#[test]
fn reference_secular_polynomials() {
    for (q, n) in GOLDEN_CASES {
        let want = golden(q, n).unwrap();
        let got = spectrum(q, n).polynomial;
        assert_eq!(got, want, "q={q} N={n}");
    }
}

#[test]
fn closed_forms_reproduce_reference_spectra() {
    let t = closed_form_spectrum(1, 4).unwrap();
    assert_eq!(t.values(), [-3, -1, 1, 3]);
    let t = closed_form_spectrum(2, 3).unwrap();
    assert_eq!(t.values(), [-1, 2]);
    let t = closed_form_spectrum(3, 3).unwrap();
    assert_eq!(t.values(), [-2, 0, 2]);
    assert_eq!(t.companions_of(0), [-2, 2]);
}

#[test]
fn real_spectra_match_closed_forms() {
    let cases = (1..=10).map(|n| (1, n)).chain((1..=6).map(|n| (2, n))).chain((1..=6).map(|n| (3, n)));
    for (q, n) in cases {
        let report = spectrum(q, n);
        let v = verify_spectrum(q, n, &report);
        assert_eq!(v.status, VerdictStatus::Match, "q={q} N={n}: {v:?}");
        assert!(v.companions.iter().all(|c| c.ok), "q={q} N={n}: {:?}", v.companions);
        if q == 3 {
            assert!(!v.companions.is_empty() || n < 2);
        }
    }
}

#[test]
fn q2_degree_is_triangular() {
    for n in 3..=5 {
        let r = spectrum(2, n);
        assert_eq!(r.degree(), n * (n + 1) / 2, "N={n}");
        assert_eq!(r.staircase_dimension, n * (n + 1) / 2);
    }
}

#[test]
fn exponents_are_congruent_mod_q_plus_one() {
    for (q, n) in [(1, 6), (2, 5), (3, 5), (4, 3)] {
        let r = spectrum(q, n);
        assert_eq!(r.support.modulus, q + 1);
        assert!(r.support.pass, "q={q} N={n}: {:?}", r.polynomial.support());
    }
}

#[test]
fn mirror_symmetry_on_every_fiber() {
    for (q, n) in [(2, 4), (3, 4), (4, 3)] {
        let r = spectrum(q, n);
        assert!(!r.symmetry.is_empty());
        assert!(r.symmetry.iter().all(|s| s.holds), "q={q} N={n}: {:?}", r.symmetry);
    }
}

#[test]
fn q4_n4_has_three_certified_values() {
    let r = spectrum(4, 4);
    assert_eq!(r.roots.total_real_roots(), 3);
    assert_eq!(r.roots.rational_roots.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), [int(3)]);
    // the pair (1 -/+ sqrt 5)/2 are the roots of x^2 - x - 1
    let (q, _) = &r.roots.quadratic_factors[0];
    assert_eq!((q.a, q.b), (-1, -1));
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let mut approx: Vec<f64> = r.roots.quadratic_roots.iter().map(|x| x.approx()).collect();
    approx.sort_by(f64::total_cmp);
    assert!((approx[0] - (1.0 - golden)).abs() < 1e-9 && (approx[1] - golden).abs() < 1e-9);
    let tol = Rational::new(1.into(), 1000.into());
    assert!(r.roots.quadratic_roots.iter().all(|x| x.interval.width() < tol));

    let small = isolate_real_roots_with(&r.polynomial, 64, &tol);
    assert_eq!(small.quadratic_factors[0].0, *q);
}

#[test]
fn q5_family_bookkeeping() {
    let degrees = |n: usize| {
        let f = q5_factor_families(n).unwrap();
        [f.p1.degree().unwrap(), f.p2.degree().unwrap(), f.p3.degree().unwrap(), f.p4_degree]
    };
    assert_eq!(degrees(6), [11, 12, 20, 48]);
    assert_eq!(degrees(7), [13, 18, 24, 72]);
    assert_eq!(degrees(6).iter().sum::<usize>(), 91);
    assert_eq!(degrees(7).iter().sum::<usize>(), 127);
    for n in 6..=9 {
        assert_eq!(3 * n * n - 3 * n + 1, [91, 127, 169, 217][n - 6]);
    }
}

#[test]
fn sextic_lies_in_the_lex_ideal() {
    let sys = build_large_d_system(2, 3, Normalization::First).unwrap();
    let (gb, _, _) = reduced_basis(&sys, &SpectrumOptions::default()).unwrap();
    let lex = fglm_convert(&gb, &elimination_order(&sys, 1)).unwrap();
    let s = Polynomial::var(&lex.ring, lex.ring.var_index("s").unwrap());
    let sextic = &(&s.pow(6) - &s.pow(3).scale(&int(7))) - &Polynomial::constant(&lex.ring, int(8));
    assert!(poly_reduce(&sextic, &lex.polynomials).unwrap().is_zero());
}

#[test]
fn sturm_counts_agree_with_integer_roots() {
    for (q, n) in GOLDEN_CASES {
        let p = golden(q, n).unwrap();
        let mut roots = brute_integer_roots(&p);
        roots.dedup();
        assert_eq!(real_root_count(&p), roots.len(), "q={q} N={n}");
    }
    // an irrational pair and a rational root
    let p = UniPoly::from_ints(&[3, 2, -4, 1], "x").mul(&UniPoly::from_ints(&[1, 0, 1], "x"));
    assert_eq!(brute_integer_roots(&p), [3]);
    assert_eq!(real_root_count(&p), 3);
}

#[test]
fn last_normalization_gives_the_same_secular_polynomial() {
    for (q, n) in [(1, 4), (2, 3), (3, 3)] {
        let opts = SpectrumOptions {
            normalization: Normalization::Last,
            ..SpectrumOptions::default()
        };
        let r = compute_spectrum(q, n, &opts).unwrap();
        assert_eq!(r.polynomial, golden(q, n).unwrap());
    }
}
