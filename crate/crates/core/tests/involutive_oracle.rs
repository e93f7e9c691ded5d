mod common;

use common::{buchberger, random_zero_dim, remainder, Rng};
use qes_core::involutive::{extract_reduced_gb, is_janet_basis, janet_basis, janet_basis_with, JanetOptions};
use qes_core::poly::{MonomialOrder, OrderKind, Polynomial, Ring};

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
}

#[test]
fn janet_gb_matches_buchberger_on_random_systems() {
    let mut rng = Rng(0x9e37_79b9_7f4a_7c15);
    let mut checked = 0;
    for case in 0..60 {
        let n = 2 + case % 3;
        let kind = if case % 4 == 3 && n < 4 { OrderKind::Lex } else { OrderKind::DegRevLex };
        let ring = Ring::new(names(n), kind);
        let gens = random_zero_dim(&ring, &mut rng);
        let jb = janet_basis(&gens, ring.order()).unwrap();
        assert!(is_janet_basis(&jb.basis), "case {case}: not involutive");
        let gb = extract_reduced_gb(&jb);
        let oracle = buchberger(&gens);
        assert_eq!(gb, oracle, "case {case}: {gens:?}");
        for g in &gens {
            assert!(remainder(g, &gb).is_zero());
        }
        checked += 1;
    }
    assert!(checked >= 50);
}

#[test]
fn random_precedence_is_respected() {
    let mut rng = Rng(77);
    for case in 0..10 {
        let ring = Ring::new(names(3), OrderKind::DegRevLex);
        let gens = random_zero_dim(&ring, &mut rng);
        let order = MonomialOrder::with_precedence(OrderKind::DegRevLex, vec![2, 0, 1]).unwrap();
        let jb = janet_basis(&gens, &order).unwrap();
        let gb = extract_reduced_gb(&jb);
        let rehomed: Vec<Polynomial> = gens.iter().map(|g| g.with_order(&order).unwrap()).collect();
        assert_eq!(gb, buchberger(&rehomed), "case {case}");
    }
}

#[test]
fn traced_history_expresses_basis_in_inputs() {
    let mut rng = Rng(4242);
    for _ in 0..6 {
        let ring = Ring::new(names(3), OrderKind::DegRevLex);
        let gens = random_zero_dim(&ring, &mut rng);
        let opts = JanetOptions {
            trace: true,
            ..JanetOptions::default()
        };
        let jb = janet_basis_with(&gens, ring.order(), &opts).unwrap();
        let hist = jb.history.as_ref().unwrap();
        for (t, cof) in jb.basis.iter().zip(hist) {
            let mut sum = Polynomial::zero(&jb.ring);
            for (c, g) in cof.iter().zip(&jb.inputs) {
                sum = &sum + &(c * g);
            }
            assert_eq!(sum, t.pol);
        }
    }
}

#[test]
fn janet_normal_forms_do_not_depend_on_set_order() {
    use qes_core::involutive::{janet_normal_form, NormalFormMode};
    let mut rng = Rng(99);
    let ring = Ring::new(names(3), OrderKind::DegRevLex);
    let gens = random_zero_dim(&ring, &mut rng);
    let jb = janet_basis(&gens, ring.order()).unwrap();
    let probe = common::random_poly(&ring, &mut rng, 6, 4);
    let a = janet_normal_form(&probe, &jb.basis, NormalFormMode::Full);
    let mut rev = jb.basis.clone();
    rev.reverse();
    let b = janet_normal_form(&probe, &rev, NormalFormMode::Full);
    assert_eq!(a, b);
    assert!(remainder(&(&probe - &a), &extract_reduced_gb(&jb)).is_zero());
}
