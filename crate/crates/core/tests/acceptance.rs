//! Acceptance run: one PASS/FAIL line per criterion. The stretch run
//! (criterion 5) is reported but does not decide the exit status.
//!
//! `QES_STRETCH=0` skips the stretch run; `QES_STRETCH_SECS` sets its
//! time budget (default 1800).

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{
    assert_janet_cover, brute_integer_roots, buchberger, golden, q1_kernel_oracle, random_zero_dim, remainder, Rng,
    GOLDEN_CASES,
};
use qes_core::budget::Budget;
use qes_core::fglm::{fglm_convert, minimal_polynomial, quotient_staircase};
use qes_core::involutive::{extract_reduced_gb, is_janet_basis, janet_basis, janet_basis_with, JanetOptions};
use qes_core::magyari::{
    build_large_d_system, check_large_d_limit, check_singh_constraint, kernel_vector, Normalization,
};
use qes_core::poly::{Monomial, MonomialOrder, OrderKind, Polynomial, Rational, Ring};
use qes_core::spectra::{
    closed_form_spectrum, compute_spectrum, q5_factor_families, secular_support_check, verify_spectrum,
    SpectrumOptions, VerdictStatus,
};
use qes_core::unipoly::{real_root_count, UniPoly};

type Outcome = Result<String, String>;

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match &out {
        Ok(msg) => println!("criterion {label}: PASS ({secs:.1}s) {msg}"),
        Err(msg) => println!("criterion {label}: FAIL ({secs:.1}s) {msg}"),
    }
    out.is_ok()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> SpectrumOptions {
    SpectrumOptions::default()
}

fn golden_polynomials() -> Outcome {
    for (q, n) in GOLDEN_CASES {
        let r = compute_spectrum(q, n, &opts()).map_err(|e| e.to_string())?;
        let want = golden(q, n).unwrap();
        ensure(r.polynomial == want, || format!("q={q} N={n}: got {}", r.polynomial))?;
    }
    Ok(format!("{} reference polynomials reproduced exactly", GOLDEN_CASES.len()))
}

fn closed_form_spectra() -> Outcome {
    let cases: Vec<(usize, usize)> = (1..=10)
        .map(|n| (1, n))
        .chain((1..=6).map(|n| (2, n)))
        .chain((1..=6).map(|n| (3, n)))
        .collect();
    let mut companions = 0;
    for &(q, n) in &cases {
        let r = compute_spectrum(q, n, &opts()).map_err(|e| e.to_string())?;
        let v = verify_spectrum(q, n, &r);
        ensure(v.status == VerdictStatus::Match, || format!("q={q} N={n}: {v:?}"))?;
        ensure(v.companions.iter().all(|c| c.ok), || format!("q={q} N={n}: {:?}", v.companions))?;
        companions += v.companions.len();
    }
    Ok(format!("{} cases, {companions} q=3 companion sets", cases.len()))
}

fn q4_n4() -> Outcome {
    let r = compute_spectrum(4, 4, &opts()).map_err(|e| e.to_string())?;
    let roots = &r.roots;
    ensure(roots.total_real_roots() == 3, || format!("{} real roots", roots.total_real_roots()))?;
    let rational: Vec<Rational> = roots.rational_roots.iter().map(|x| x.0.clone()).collect();
    ensure(rational == [Rational::from_integer(3.into())], || format!("rational roots {rational:?}"))?;
    let quads: Vec<_> = roots.quadratic_factors.iter().filter(|(q, _)| q.has_real_roots()).collect();
    ensure(quads.len() == 1 && (quads[0].0.a, quads[0].0.b) == (-1, -1), || format!("quadratics {quads:?}"))?;
    let tol = Rational::new(1.into(), 1000.into());
    let mut approx = Vec::new();
    for root in &roots.quadratic_roots {
        ensure(root.interval.width() < tol, || "interval too wide".into())?;
        approx.push(root.approx());
    }
    approx.sort_by(f64::total_cmp);
    ensure((approx[0] + 0.618).abs() < 1e-3 && (approx[1] - 1.618).abs() < 1e-3, || format!("{approx:?}"))?;
    let note = verify_spectrum(4, 4, &r).notes.into_iter().find(|n| n.contains("sign")).unwrap_or_default();
    ensure(!note.is_empty(), || "sign convention not flagged".into())?;
    Ok(format!("s4 in {{3, {:.6}, {:.6}}}; x^2 - x - 1; sign flagged", approx[0], approx[1]))
}

fn degree_laws() -> Outcome {
    for n in 3..=5 {
        let r = compute_spectrum(2, n, &opts()).map_err(|e| e.to_string())?;
        ensure(r.degree() == n * (n + 1) / 2, || format!("q=2 N={n}: degree {}", r.degree()))?;
    }
    let deg = |n: usize| {
        let f = q5_factor_families(n).unwrap();
        [f.p1.degree().unwrap(), f.p2.degree().unwrap(), f.p3.degree().unwrap(), f.p4_degree]
    };
    ensure(deg(6) == [11, 12, 20, 48] && deg(6).iter().sum::<usize>() == 91, || format!("{:?}", deg(6)))?;
    ensure(deg(7) == [13, 18, 24, 72] && deg(7).iter().sum::<usize>() == 127, || format!("{:?}", deg(7)))?;
    let secs: u64 = std::env::var("QES_Q5_SECS").ok().and_then(|v| v.parse().ok()).unwrap_or(120);
    let mut done = Vec::new();
    let mut open = Vec::new();
    for (n, expected) in [(6usize, 91usize), (7, 127), (8, 169), (9, 217)] {
        ensure(3 * n * n - 3 * n + 1 == expected, || format!("law at N={n}"))?;
        let budget = Budget::new(Some(Duration::from_secs(secs)), Some(3 << 30));
        let sys = build_large_d_system(5, n, Normalization::First).unwrap();
        let jopts = JanetOptions {
            budget: budget.clone(),
            ..JanetOptions::default()
        };
        let Ok(jb) = janet_basis_with(&sys.equations, sys.ring.order(), &jopts) else {
            open.push(n);
            continue;
        };
        let gb = extract_reduced_gb(&jb);
        match minimal_polynomial(&gb, sys.s_vars[4], &budget) {
            Ok(m) => {
                ensure(m.len() - 1 == expected, || format!("q=5 N={n}: degree {}", m.len() - 1))?;
                done.push(n);
            }
            Err(_) => open.push(n),
        }
    }
    ensure(!done.is_empty(), || "no q=5 run completed".into())?;
    Ok(format!("q=2 N=3..5 triangular; families 91, 127; q=5 degrees confirmed for N={done:?}, out of budget ({secs}s) for N={open:?}"))
}

fn stretch() -> Outcome {
    let secs: u64 = std::env::var("QES_STRETCH_SECS").ok().and_then(|v| v.parse().ok()).unwrap_or(1800);
    let o = SpectrumOptions {
        budget: Budget::new(Some(Duration::from_secs(secs)), Some(16 << 30)),
        ..opts()
    };
    let r = compute_spectrum(5, 6, &o).map_err(|e| format!("q=5 N=6 did not finish: {e}"))?;
    let lead = [1i64, -16120, 49490694, -286066906320, -3553475147614293];
    let d = r.degree();
    // exponents step by q + 1 = 6 from the top
    for (k, &c) in lead.iter().enumerate() {
        let got = r.polynomial.coeff(d - 6 * k);
        ensure(got == Rational::from_integer(c.into()), || format!("coefficient of x^{}: {got}", d - 6 * k))?;
    }
    let roots: Vec<i64> = r.roots.rational_roots.iter().map(|x| x.0.to_integer().try_into().unwrap()).collect();
    ensure(roots == (-5..=5).collect::<Vec<_>>(), || format!("roots {roots:?}"))?;
    ensure(r.roots.total_real_roots() == 11, || format!("{} real roots", r.roots.total_real_roots()))?;
    let families = q5_factor_families(6).unwrap().product();
    let families = UniPoly::new(families.coeffs().to_vec(), r.polynomial.var());
    ensure(r.polynomial.exact_div(&families).is_some(), || "P1 P2 P3 does not divide".into())?;
    let predicted = closed_form_spectrum(5, 6).unwrap().values();
    ensure(roots == predicted, || format!("predicted {predicted:?}"))?;
    Ok(format!("degree {d}, leading coefficients and roots -5..5 reproduced; P1 P2 P3 divides"))
}

fn names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
}

fn properties() -> Outcome {
    // Janet definition on the pipeline's bases and on random systems
    let mut janet = 0;
    for (q, n) in GOLDEN_CASES.iter().copied().chain([(4, 3), (2, 5)]) {
        let sys = build_large_d_system(q, n, Normalization::First).unwrap();
        let jb = janet_basis(&sys.equations, sys.ring.order()).map_err(|e| e.to_string())?;
        ensure(is_janet_basis(&jb.basis), || format!("q={q} N={n} not involutive"))?;
        if sys.ring.nvars() <= 6 {
            let heads: Vec<Monomial> = jb.basis.iter().map(|t| t.pol.leading_monomial().unwrap().clone()).collect();
            let top = heads.iter().map(|h| h.degree()).max().unwrap() as u16;
            assert_janet_cover(&heads, &extract_reduced_gb(&jb), sys.ring.order().precedence(), top + 1);
        }
        janet += 1;
    }
    // reduced GB against Buchberger; FGLM ideal equality; staircase size
    let mut rng = Rng(0xacce_97ed);
    let mut random = 0;
    for case in 0..60 {
        let nv = 2 + case % 3;
        let ring = Ring::new(names(nv), OrderKind::DegRevLex);
        let gens = random_zero_dim(&ring, &mut rng);
        let jb = janet_basis(&gens, ring.order()).map_err(|e| e.to_string())?;
        ensure(is_janet_basis(&jb.basis), || format!("random case {case} not involutive"))?;
        let gb = extract_reduced_gb(&jb);
        ensure(gb == buchberger(&gens), || format!("random case {case}: GB differs from Buchberger"))?;
        let lex = fglm_convert(&gb, &MonomialOrder::lex(nv)).map_err(|e| e.to_string())?;
        for p in &lex.polynomials {
            ensure(remainder(&p.with_order(ring.order()).unwrap(), &gb).is_zero(), || format!("case {case}: lex not in ideal"))?;
        }
        for p in &gb {
            ensure(remainder(&p.with_order(lex.ring.order()).unwrap(), &lex.polynomials).is_zero(), || format!("case {case}: GB not in lex ideal"))?;
        }
        let drl = quotient_staircase(&gb).unwrap().dimension();
        ensure(quotient_staircase(&lex.polynomials).unwrap().dimension() == drl, || format!("case {case}: staircase"))?;
        random += 1;
    }
    ensure(random >= 50, || "too few random systems".into())?;
    // Sturm counts on the golden corpus against integer-root enumeration
    for (q, n) in GOLDEN_CASES {
        let p = golden(q, n).unwrap();
        let mut roots = brute_integer_roots(&p);
        roots.dedup();
        ensure(real_root_count(&p) == roots.len(), || format!("Sturm count at q={q} N={n}"))?;
    }
    // support of every computed secular polynomial
    let mut support = 0;
    for q in 1..=4 {
        for n in 1..=if q == 1 { 10 } else { 5 } {
            let r = compute_spectrum(q, n, &opts()).map_err(|e| e.to_string())?;
            let c = secular_support_check(&r.polynomial, q);
            ensure(c.pass && c.modulus == q + 1, || format!("support at q={q} N={n}"))?;
            support += 1;
        }
    }
    // q = 1 kernels are binomial products
    for n in 1..=12 {
        let sys = build_large_d_system(1, n, Normalization::First).unwrap();
        for j in 1..=n {
            let s = Rational::from_integer((2 * j as i64 - n as i64 - 1).into());
            let v = kernel_vector(&sys, &[s]).map_err(|e| e.to_string())?;
            let v: Vec<_> = v.iter().map(|x| x.to_integer()).collect();
            ensure(v == q1_kernel_oracle(n, j), || format!("kernel N={n} j={j}"))?;
        }
    }
    for q in 1..=3 {
        for n in 1..=4 {
            check_large_d_limit(q, n).map_err(|e| format!("large-D q={q} N={n}: {e}"))?;
        }
    }
    for n in 1..=6 {
        check_singh_constraint(n).map_err(|e| format!("Singh N={n}: {e}"))?;
    }
    let _ = Polynomial::zero;
    Ok(format!(
        "Janet {janet} systems; {random} random systems vs Buchberger and FGLM; Sturm on {} goldens; support on {support}; kernels N<=12; large-D q<=3 N<=4; Singh N<=6",
        GOLDEN_CASES.len()
    ))
}

fn main() {
    let mut gate = true;
    gate &= run("1 golden secular polynomials", golden_polynomials);
    gate &= run("2 real spectra vs closed forms", closed_form_spectra);
    gate &= run("3 q=4 N=4 certified values", q4_n4);
    gate &= run("4 degree laws", degree_laws);
    if std::env::var("QES_STRETCH").is_ok_and(|v| v == "0") {
        println!("criterion 5 stretch q=5 N=6: FAIL (not run: QES_STRETCH=0)");
    } else {
        run("5 stretch q=5 N=6", stretch);
    }
    gate &= run("6 property suites", properties);
    if !gate {
        std::process::exit(1);
    }
}
