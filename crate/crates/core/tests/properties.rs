mod common;

use common::{assert_janet_cover, buchberger, q1_kernel_oracle, random_zero_dim, remainder, Rng};
use num_bigint::BigInt;
use proptest::prelude::*;
use qes_core::exec::Execution;
use qes_core::fglm::{fglm_convert, quotient_staircase};
use qes_core::involutive::{extract_reduced_gb, is_janet_basis, janet_basis, janet_basis_with, JanetOptions};
use qes_core::magyari::{
    alpha_from_g, build_large_d_system, check_large_d_limit, check_singh_constraint, elimination_order, g_from_alpha,
    kernel_vector, q1_wavefunction_coeffs, Normalization, RescaleMap,
};
use qes_core::poly::{Monomial, MonomialOrder, OrderKind, Polynomial, Rational, Ring};
use qes_core::spectra::{compute_spectrum, secular_support_check, SpectrumOptions};
use std::cmp::Ordering;

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
}

#[test]
fn janet_cones_cover_the_leading_ideal() {
    let mut rng = Rng(0x51ed_2701);
    for case in 0..20 {
        let ring = Ring::new(names(2 + case % 2), OrderKind::DegRevLex);
        let gens = random_zero_dim(&ring, &mut rng);
        let jb = janet_basis(&gens, ring.order()).unwrap();
        let heads: Vec<Monomial> = jb.basis.iter().map(|t| t.pol.leading_monomial().unwrap().clone()).collect();
        let top = heads.iter().map(|h| h.degree()).max().unwrap() as u16;
        assert_janet_cover(&heads, &buchberger(&gens), ring.order().precedence(), top + 2);
    }
    for (q, n) in [(1, 4), (2, 3), (3, 2)] {
        let sys = build_large_d_system(q, n, Normalization::First).unwrap();
        let jb = janet_basis(&sys.equations, sys.ring.order()).unwrap();
        assert!(is_janet_basis(&jb.basis));
        let heads: Vec<Monomial> = jb.basis.iter().map(|t| t.pol.leading_monomial().unwrap().clone()).collect();
        let top = heads.iter().map(|h| h.degree()).max().unwrap() as u16;
        assert_janet_cover(&heads, &extract_reduced_gb(&jb), sys.ring.order().precedence(), top + 1);
    }
}

#[test]
fn fglm_generates_the_same_ideal() {
    let mut rng = Rng(0xf61_3a5);
    for case in 0..30 {
        let n = 2 + case % 3;
        let ring = Ring::new(names(n), OrderKind::DegRevLex);
        let gens = random_zero_dim(&ring, &mut rng);
        let gb = extract_reduced_gb(&janet_basis(&gens, ring.order()).unwrap());
        let lex = fglm_convert(&gb, &MonomialOrder::lex(n)).unwrap();
        let lex_in_drl: Vec<Polynomial> = lex.polynomials.iter().map(|p| p.with_order(ring.order()).unwrap()).collect();
        let drl_in_lex: Vec<Polynomial> = gb.iter().map(|p| p.with_order(lex.ring.order()).unwrap()).collect();
        for p in &lex_in_drl {
            assert!(remainder(p, &gb).is_zero(), "case {case}");
        }
        for p in &drl_in_lex {
            assert!(remainder(p, &lex.polynomials).is_zero(), "case {case}");
        }
        // the lex side equals the textbook oracle in that order; lex
        // Buchberger is too slow beyond three variables
        if n > 3 {
            continue;
        }
        let gens_lex: Vec<Polynomial> = gens.iter().map(|g| g.with_order(lex.ring.order()).unwrap()).collect();
        assert_eq!(lex.polynomials, buchberger(&gens_lex), "case {case}");
    }
}

#[test]
fn staircase_size_does_not_depend_on_the_order() {
    let mut rng = Rng(31337);
    for case in 0..20 {
        let n = 2 + case % 2;
        let ring = Ring::new(names(n), OrderKind::DegRevLex);
        let gens = random_zero_dim(&ring, &mut rng);
        let drl = quotient_staircase(&buchberger(&gens)).unwrap().dimension();
        let mut prec: Vec<usize> = (0..n).collect();
        prec.rotate_left(case % n);
        let lex_order = MonomialOrder::with_precedence(OrderKind::Lex, prec).unwrap();
        // Janet completion run directly in lex, independent of FGLM
        let lex_gb = extract_reduced_gb(&janet_basis(&gens, &lex_order).unwrap());
        let lex = quotient_staircase(&lex_gb).unwrap().dimension();
        assert_eq!(drl, lex, "case {case}");
        let gb = extract_reduced_gb(&janet_basis(&gens, ring.order()).unwrap());
        assert_eq!(fglm_convert(&gb, &lex_order).unwrap().staircase_dimension, drl);
    }
    let sys = build_large_d_system(2, 4, Normalization::First).unwrap();
    let gb = extract_reduced_gb(&janet_basis(&sys.equations, sys.ring.order()).unwrap());
    let lex = fglm_convert(&gb, &elimination_order(&sys, 1)).unwrap();
    assert_eq!(quotient_staircase(&lex.polynomials).unwrap().dimension(), quotient_staircase(&gb).unwrap().dimension());
}

#[test]
fn criteria_fire_and_change_nothing() {
    let mut rng = Rng(808);
    let mut hits = (0, 0);
    for case in 0..15 {
        let ring = Ring::new(names(3 + case % 2), OrderKind::DegRevLex);
        let gens = random_zero_dim(&ring, &mut rng);
        let on = janet_basis(&gens, ring.order()).unwrap();
        let off = janet_basis_with(&gens, ring.order(), &JanetOptions { criteria: false, ..JanetOptions::default() }).unwrap();
        assert_eq!(on.polynomials(), off.polynomials(), "case {case}");
        assert_eq!((off.stats.criterion_i, off.stats.criterion_ii), (0, 0));
        hits.0 += on.stats.criterion_i;
        hits.1 += on.stats.criterion_ii;
    }
    let sys = build_large_d_system(3, 4, Normalization::First).unwrap();
    let on = janet_basis(&sys.equations, sys.ring.order()).unwrap();
    hits.0 += on.stats.criterion_i;
    hits.1 += on.stats.criterion_ii;
    assert!(hits.0 > 0 && hits.1 > 0, "{hits:?}");
}

#[test]
fn parallel_and_sequential_runs_agree() {
    for (q, n) in [(2, 5), (3, 4), (4, 3)] {
        let sys = build_large_d_system(q, n, Normalization::First).unwrap();
        let run = |exec| janet_basis_with(&sys.equations, sys.ring.order(), &JanetOptions { exec, ..JanetOptions::default() }).unwrap();
        let seq = run(Execution::Sequential);
        let par = run(Execution::available());
        assert_eq!(seq.polynomials(), par.polynomials());
        assert_eq!(seq.stats, par.stats);
    }
}

#[test]
fn q1_kernels_are_binomial_products() {
    for n in 1..=12usize {
        let sys = build_large_d_system(1, n, Normalization::First).unwrap();
        for j in 1..=n {
            let want = q1_kernel_oracle(n, j);
            let s = Rational::from_integer(BigInt::from(2 * j as i64 - n as i64 - 1));
            let got = kernel_vector(&sys, &[s]).unwrap();
            let got: Vec<BigInt> = got.iter().map(|r| {
                assert!(r.is_integer());
                r.to_integer()
            }).collect();
            assert_eq!(got, want, "N={n} j={j}");
            assert_eq!(q1_wavefunction_coeffs(n, j).unwrap(), want);
        }
    }
}

#[test]
fn large_d_limit_reproduces_the_stencil() {
    for q in 1..=3 {
        for n in 1..=4 {
            check_large_d_limit(q, n).unwrap_or_else(|e| panic!("q={q} N={n}: {e}"));
        }
    }
}

#[test]
fn singh_constraint_at_q1() {
    for n in 1..=6 {
        check_singh_constraint(n).unwrap_or_else(|e| panic!("N={n}: {e}"));
    }
}

#[test]
fn secular_support_on_computed_polynomials() {
    for q in 1..=4 {
        for n in 1..=4 {
            let r = compute_spectrum(q, n, &SpectrumOptions::default()).unwrap();
            let check = secular_support_check(&r.polynomial, q);
            assert_eq!(check.modulus, q + 1);
            assert!(check.pass, "q={q} N={n}: {}", r.polynomial);
        }
    }
}

fn rat() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..50, 1i64..20).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

proptest! {
    #[test]
    fn rescale_round_trip(q in 1usize..5, gamma in positive(), mu in positive(), seed in prop::collection::vec(rat(), 10)) {
        let map = RescaleMap::new(q, gamma, mu).unwrap();
        let alpha = &seed[..q + 1];
        let g = &seed[5..5 + q];
        let s = map.rescale(alpha, g);
        prop_assert_eq!(map.unscale(alpha, &s), g.to_vec());
        prop_assert_eq!(map.energy(&alpha[0], &s[0]), -g[0].clone());
    }

    #[test]
    fn coupling_round_trip(q in 1usize..5, top in 1i64..12, seed in prop::collection::vec(rat(), 10)) {
        let mut alpha = seed[..q].to_vec();
        alpha.push(Rational::from_integer(top.into()));
        let big_g = seed[5..5 + q].to_vec();
        let g = g_from_alpha(&big_g, &alpha);
        prop_assert_eq!(g.len(), 2 * q + 1);
        let (g_back, a_back) = alpha_from_g(&g).unwrap();
        prop_assert_eq!(a_back, alpha);
        prop_assert_eq!(g_back, big_g);
    }

    #[test]
    fn elimination_order_is_admissible(
        q in 1usize..4,
        n in 2usize..4,
        e in prop::collection::vec(0u16..4, 24),
    ) {
        let sys = build_large_d_system(q, n, Normalization::First).unwrap();
        let order = elimination_order(&sys, q);
        let k = sys.ring.nvars();
        let mono = |off: usize| Monomial::from_exponents(e[off..off + k].iter().copied());
        let (u, v, w) = (mono(0), mono(k), mono(2 * k));
        let one = Monomial::one(k);
        prop_assert_ne!(order.cmp(&one, &u), Ordering::Greater);
        prop_assert_eq!(order.cmp(&u, &v), order.cmp(&u.mul(&w), &v.mul(&w)));
        prop_assert_eq!(order.cmp(&u, &v), order.cmp(&v, &u).reverse());
    }
}
