//! System -> Janet basis -> reduced GB -> lex basis -> secular polynomial
//! -> certified real roots -> solution fibers.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::cache::StageCache;
use super::closed_form::{secular_support_check, SupportCheck};
use super::fiber::{solve_fiber, Fiber, FiberField};
use super::SpectraError;
use crate::budget::Budget;
use crate::exec::Execution;
use crate::fglm::{fglm_convert_with, FglmError, LexBasis};
use crate::involutive::json::BasisJson;
use crate::involutive::{extract_reduced_gb, janet_basis_with, InvolutiveError, JanetOptions, JanetStats};
use crate::magyari::{build_large_d_system, elimination_order, MagyariSystem, Normalization, QuadSurd};
use crate::poly::{format_rational, Polynomial, Rational};
use crate::unipoly::{isolate_real_roots_with, RealRootReport, RealRootReportJson, UniPoly, UniPolyJson, DEFAULT_QUADRATIC_BOUND};

#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    pub normalization: Normalization,
    /// 1-based index of the secular unknown; `None` picks the default.
    pub secular: Option<usize>,
    pub budget: Budget,
    pub cache: Option<StageCache>,
    pub exec: Execution,
    pub quadratic_bound: u64,
    /// Interval width for irrational roots.
    pub width: Rational,
    pub fibers: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            normalization: Normalization::First,
            secular: None,
            budget: Budget::standard(),
            cache: None,
            exec: Execution::Sequential,
            quadratic_bound: DEFAULT_QUADRATIC_BOUND,
            width: Rational::new(1.into(), (1u64 << 20).into()),
            fibers: true,
        }
    }
}

/// `s_1` for q <= 2, `s_q` beyond.
pub fn default_secular(q: usize) -> usize {
    if q <= 2 {
        1
    } else {
        q
    }
}

/// Mirror pairs `(k, q+1-k)` of the diagonal unknowns.
pub fn mirror_pairs(q: usize) -> Vec<(usize, usize)> {
    (1..=q).filter(|&k| 2 * k < q + 1).map(|k| (k, q + 1 - k)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub s: Vec<String>,
    pub approx: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<String>>,
    pub consistent: bool,
    pub mirror_symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootFiber {
    pub root: String,
    pub approx: f64,
    pub points: Vec<PointReport>,
    pub unresolved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryFinding {
    pub pair: [String; 2],
    /// Equal at every reconstructed point.
    pub holds: bool,
    pub points: usize,
}

#[derive(Clone, Debug)]
pub struct SecularReport {
    pub q: usize,
    pub n: usize,
    pub normalization: Normalization,
    pub secular: usize,
    pub secular_name: String,
    pub polynomial: UniPoly,
    pub staircase_dimension: usize,
    pub support: SupportCheck,
    pub roots: RealRootReport,
    pub fibers: Vec<RootFiber>,
    pub symmetry: Vec<SymmetryFinding>,
    pub janet_stats: JanetStats,
    pub janet_size: usize,
    pub gb_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecularReportJson {
    pub q: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub normalization: Normalization,
    pub secular_variable: String,
    pub polynomial: UniPolyJson,
    pub display: String,
    pub degree: usize,
    pub staircase_dimension: usize,
    pub support: SupportCheck,
    pub roots: RealRootReportJson,
    pub fibers: Vec<RootFiber>,
    pub symmetry: Vec<SymmetryFinding>,
    pub janet_stats: JanetStats,
    pub janet_size: usize,
    pub gb_size: usize,
}

impl SecularReport {
    pub fn degree(&self) -> usize {
        self.polynomial.degree().unwrap_or(0)
    }

    pub fn to_json(&self) -> SecularReportJson {
        SecularReportJson {
            q: self.q,
            n: self.n,
            normalization: self.normalization,
            secular_variable: self.secular_name.clone(),
            polynomial: (&self.polynomial).into(),
            display: self.polynomial.to_string(),
            degree: self.degree(),
            staircase_dimension: self.staircase_dimension,
            support: self.support.clone(),
            roots: self.roots.to_json(),
            fibers: self.fibers.clone(),
            symmetry: self.symmetry.clone(),
            janet_stats: self.janet_stats.clone(),
            janet_size: self.janet_size,
            gb_size: self.gb_size,
        }
    }
}

/// Serialized lex stage.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct LexStage {
    basis: BasisJson,
    staircase_dimension: usize,
}

fn norm_tag(n: Normalization) -> &'static str {
    match n {
        Normalization::First => "",
        Normalization::Last => "-last",
    }
}

fn budget_err(stage: &str, completed: &[&str], e: crate::budget::BudgetExceeded) -> SpectraError {
    SpectraError::Budget {
        stage: stage.to_string(),
        completed: completed.iter().map(|s| s.to_string()).collect(),
        source: e,
    }
}

fn store<T: Serialize>(cache: Option<&StageCache>, key: &str, stage: &str, v: &T) {
    if let Some(c) = cache {
        if let Err(e) = c.store(key, stage, v) {
            log::warn!("could not cache {key}/{stage}: {e}");
        }
    }
}

/// Degrevlex Janet basis and the reduced GB extracted from it, resumed
/// from the cache where possible.
pub fn reduced_basis(
    sys: &MagyariSystem,
    opts: &SpectrumOptions,
) -> Result<(Vec<Polynomial>, JanetStats, usize), SpectraError> {
    let key = format!("{}_{}_degrevlex{}", sys.q, sys.n, norm_tag(sys.normalization));
    let cache = opts.cache.as_ref();
    let janet: Option<BasisJson> = cache.and_then(|c| c.load(&key, "janet"));
    let cached_gb: Option<BasisJson> = cache.and_then(|c| c.load(&key, "gb"));
    if let (Some(j), Some(g)) = (&janet, &cached_gb) {
        let (_, polys) = g.polynomials()?;
        log::info!("{key}: janet and gb stages from cache");
        return Ok((polys.into_iter().map(|p| p.in_ring(&sys.ring)).collect(), j.stats.clone().unwrap_or_default(), j.elements.len()));
    }
    let (stats, size, gb) = match janet {
        Some(j) => {
            log::info!("{key}: janet stage from cache");
            let (_, polys) = j.polynomials()?;
            let gb = gb_from_cached_janet(&j, sys)?;
            (j.stats.clone().unwrap_or_default(), polys.len(), gb)
        }
        None => {
            let jopts = JanetOptions {
                exec: opts.exec,
                budget: opts.budget.clone(),
                ..JanetOptions::default()
            };
            let jb = janet_basis_with(&sys.equations, sys.ring.order(), &jopts).map_err(|e| match e {
                InvolutiveError::Budget(b) => budget_err("janet", &[], b),
                other => other.into(),
            })?;
            log::info!("{key}: janet basis with {} elements, {:?}", jb.basis.len(), jb.stats);
            store(cache, &key, "janet", &BasisJson::from_janet(&jb));
            (jb.stats.clone(), jb.basis.len(), extract_reduced_gb(&jb))
        }
    };
    store(cache, &key, "gb", &BasisJson::from_polys(&sys.ring, &gb));
    Ok((gb, stats, size))
}

fn gb_from_cached_janet(j: &BasisJson, sys: &MagyariSystem) -> Result<Vec<Polynomial>, SpectraError> {
    let (_, triples) = j.triples()?;
    let triples = triples
        .into_iter()
        .map(|mut t| {
            t.pol = t.pol.in_ring(&sys.ring);
            t
        })
        .collect();
    let jb = crate::involutive::JanetBasisResult {
        basis: triples,
        ring: sys.ring.clone(),
        stats: j.stats.clone().unwrap_or_default(),
        history: None,
        inputs: sys.equations.clone(),
    };
    Ok(extract_reduced_gb(&jb))
}

/// Lex basis with `s_secular` least, resumed from the cache where possible.
pub fn lex_basis(
    sys: &MagyariSystem,
    gb: &[Polynomial],
    secular: usize,
    opts: &SpectrumOptions,
) -> Result<LexBasis, SpectraError> {
    let order = elimination_order(sys, secular);
    let key = format!("{}_{}_lex-{}{}", sys.q, sys.n, sys.s_name(secular), norm_tag(sys.normalization));
    let cache = opts.cache.as_ref();
    if let Some(stage) = cache.and_then(|c| c.load::<LexStage>(&key, "lex")) {
        let (ring, polys) = stage.basis.polynomials()?;
        if ring.order() == &order {
            log::info!("{key}: lex stage from cache");
            return Ok(LexBasis {
                ring,
                polynomials: polys,
                staircase_dimension: stage.staircase_dimension,
            });
        }
    }
    let lex = fglm_convert_with(gb, &order, &opts.budget).map_err(|e| match e {
        FglmError::Budget(b) => budget_err("fglm", &["janet", "gb"], b),
        other => other.into(),
    })?;
    store(
        cache,
        &key,
        "lex",
        &LexStage {
            basis: BasisJson::from_polys(&lex.ring, &lex.polynomials),
            staircase_dimension: lex.staircase_dimension,
        },
    );
    Ok(lex)
}

fn point_reports<F: FiberField>(sys: &MagyariSystem, fiber: &Fiber<F>) -> Vec<PointReport> {
    let pairs = mirror_pairs(sys.q);
    fiber
        .points
        .iter()
        .map(|pt| PointReport {
            s: pt.s.iter().map(FiberField::show).collect(),
            approx: pt.s.iter().map(FiberField::approx).collect(),
            p: pt.p.as_ref().map(|p| p.iter().map(FiberField::show).collect()),
            consistent: pt.p.is_some(),
            mirror_symmetric: pairs.iter().all(|&(a, b)| pt.s[a - 1] == pt.s[b - 1]),
        })
        .collect()
}

/// Full pipeline for `(q, N)`.
pub fn compute_spectrum(q: usize, n: usize, opts: &SpectrumOptions) -> Result<SecularReport, SpectraError> {
    let sys = build_large_d_system(q, n, opts.normalization)?;
    let secular = opts.secular.unwrap_or_else(|| default_secular(q));
    if secular == 0 || secular > q {
        return Err(SpectraError::BadSecular(secular));
    }
    let (gb, janet_stats, janet_size) = reduced_basis(&sys, opts)?;
    opts.budget.check("gb").map_err(|e| budget_err("gb", &["janet", "gb"], e))?;
    let lex = lex_basis(&sys, &gb, secular, opts)?;
    let var = sys.s_vars[secular - 1];
    let uni = lex
        .univariate(var)
        .ok_or_else(|| SpectraError::NoUnivariate(sys.s_name(secular).to_string()))?;
    let polynomial = UniPoly::from_polynomial(uni, var).expect("univariate").monic();
    let roots = isolate_real_roots_with(&polynomial, opts.quadratic_bound, &opts.width);
    let mut fibers = Vec::new();
    if opts.fibers {
        for (r, _) in &roots.rational_roots {
            let f = solve_fiber(&sys, &lex, secular, r.clone());
            fibers.push(RootFiber {
                root: format_rational(r),
                approx: r.to_f64().unwrap_or(f64::NAN),
                points: point_reports(&sys, &f),
                unresolved: f.unresolved,
            });
        }
        for qr in &roots.quadratic_roots {
            let half = Rational::new(1.into(), 2.into());
            let a = -Rational::from_integer(qr.quadratic.a.into()) * &half;
            let b = &half * Rational::from_integer((qr.sign as i64).into());
            let d = Rational::from_integer(qr.quadratic.discriminant().into());
            let value = QuadSurd::new(a, b, d);
            let f = solve_fiber(&sys, &lex, secular, value.clone());
            fibers.push(RootFiber {
                root: value.to_string(),
                approx: value.to_f64(),
                points: point_reports(&sys, &f),
                unresolved: f.unresolved,
            });
        }
        for iv in &roots.residual_intervals {
            fibers.push(RootFiber {
                root: format!("({}, {}]", format_rational(&iv.lo), format_rational(&iv.hi)),
                approx: iv.midpoint_f64(),
                points: Vec::new(),
                unresolved: true,
            });
        }
    }
    let symmetry = mirror_pairs(q)
        .into_iter()
        .map(|(a, b)| {
            let pts: Vec<&PointReport> = fibers.iter().flat_map(|f| &f.points).collect();
            SymmetryFinding {
                pair: [sys.s_name(a).to_string(), sys.s_name(b).to_string()],
                holds: pts.iter().all(|p| p.s[a - 1] == p.s[b - 1]),
                points: pts.len(),
            }
        })
        .collect();
    Ok(SecularReport {
        q,
        n,
        normalization: opts.normalization,
        secular,
        secular_name: sys.s_name(secular).to_string(),
        support: secular_support_check(&polynomial, q),
        polynomial,
        staircase_dimension: lex.staircase_dimension,
        roots,
        fibers,
        symmetry,
        janet_stats,
        janet_size,
        gb_size: gb.len(),
    })
}
