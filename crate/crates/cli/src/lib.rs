//! `qes`: build Magyari systems, complete them, convert bases and check
//! spectra from the command line. Reports go to standard output, logs to
//! standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qes_core::budget::Budget;
use qes_core::exec::Execution;
use qes_core::fglm::fglm_convert_with;
use qes_core::involutive::json::BasisJson;
use qes_core::involutive::{janet_basis_with, JanetOptions};
use qes_core::magyari::{build_large_d_system, MagyariSystem, Normalization, SystemJson};
use qes_core::poly::json::PolyJson;
use qes_core::poly::{parse_rational, MonomialOrder, OrderKind, Polynomial};
use qes_core::spectra::{
    compute_spectrum, grid, lex_basis, reduced_basis, run_batch, verify_spectrum, Job, SecularReport, SpectraError,
    SpectrumOptions, StageCache, VerdictStatus,
};
use qes_core::unipoly::{isolate_real_roots_with, UniPoly, UniPolyJson, DEFAULT_QUADRATIC_BOUND};

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const MISMATCH: i32 = 2;
    pub const BUDGET: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "qes", version, about = "Exact spectra of large-dimension QES oscillators")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Log more (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct SystemArgs {
    #[arg(long)]
    q: Option<usize>,
    #[arg(long = "N", alias = "n")]
    n: Option<usize>,
    /// Which coefficient is fixed to 1.
    #[arg(long, default_value = "first")]
    normalization: Normalization,
}

#[derive(Debug, Args, Clone)]
struct BudgetArgs {
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 600)]
    time_limit: u64,
    /// Resident-memory limit in MiB.
    #[arg(long, default_value_t = 4096)]
    memory_limit: u64,
    /// Twelve hours and 16 GiB.
    #[arg(long)]
    extended: bool,
}

#[derive(Debug, Args, Clone)]
struct CacheArgs {
    /// Cache root; defaults to QES_CACHE_DIR or ./.qes-cache.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write cached stages.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the compact system for (q, N).
    System(SystemArgs),
    /// Minimal Janet basis (degrevlex) of a system file or of (q, N).
    Basis {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// FGLM conversion of a reduced basis to lex.
    Convert {
        #[command(flatten)]
        sys: SystemArgs,
        /// Basis document to convert instead of (q, N).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Variable placed last in the lex order.
        #[arg(long)]
        secular: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Full pipeline to the secular polynomial and its real roots.
    Spectrum {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        secular: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Compare computed real roots with the closed forms.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        secular: Option<String>,
        /// Every (q, N) up to --max-q, --max-N, in parallel.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 3)]
        max_q: usize,
        #[arg(long = "max-N", alias = "max-n", default_value_t = 5)]
        max_n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Real roots of a univariate polynomial.
    Roots {
        /// Polynomial document (shared schema, one variable) or
        /// `{"var", "coeffs"}` with ascending coefficients.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Coefficients in descending degree, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long, default_value = "x")]
        var: String,
        /// Coefficient bound of the quadratic factor search.
        #[arg(long, default_value_t = DEFAULT_QUADRATIC_BOUND)]
        bound: u64,
    },
    /// Inspect or empty the stage cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CacheAction {
    List,
    Clear,
}

/// Everything one invocation needs, resolved from flags and environment.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: String,
    pub q: Option<usize>,
    pub n: Option<usize>,
    pub order: OrderKind,
    pub secular: Option<String>,
    pub normalization: Normalization,
    pub budget: Budget,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Other(_) => exit::USAGE,
            Failure::Budget(_) => exit::BUDGET,
        }
    }
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Budget(_) => "budget_exceeded",
            Failure::Other(_) => "error",
        }
    }
    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Other(m) => m,
        }
    }
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::Budget { .. } => Failure::Budget(e.to_string()),
            SpectraError::Involutive(qes_core::involutive::InvolutiveError::Budget(b)) => Failure::Budget(b.to_string()),
            SpectraError::Fglm(qes_core::fglm::FglmError::Budget(b)) => Failure::Budget(b.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn budget_of(b: &BudgetArgs) -> Budget {
    if b.extended {
        Budget::extended()
    } else {
        Budget::new(Some(Duration::from_secs(b.time_limit)), Some(b.memory_limit << 20))
    }
}

fn cache_of(c: &CacheArgs) -> Option<StageCache> {
    if c.no_cache {
        return None;
    }
    Some(match &c.cache_dir {
        Some(d) => StageCache::new(d),
        None => StageCache::from_env(),
    })
}

fn qn(sys: &SystemArgs) -> Result<(usize, usize), Failure> {
    match (sys.q, sys.n) {
        (Some(q), Some(n)) if q >= 1 && n >= 1 => Ok((q, n)),
        (Some(_), Some(_)) => Err(Failure::Usage("need q >= 1 and N >= 1".into())),
        _ => Err(Failure::Usage("both --q and --N are required".into())),
    }
}

fn build(sys: &SystemArgs) -> Result<MagyariSystem, Failure> {
    let (q, n) = qn(sys)?;
    build_large_d_system(q, n, sys.normalization).map_err(|e| Failure::Usage(e.to_string()))
}

fn secular_index(system: &MagyariSystem, name: Option<&str>) -> Result<Option<usize>, Failure> {
    match name {
        None => Ok(None),
        Some(v) => system
            .s_index(v)
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("unknown secular variable `{v}`"))),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn polys_text(polys: &[Polynomial]) -> String {
    polys.iter().map(|p| format!("{p}\n")).collect()
}

fn spectrum_text(r: &SecularReport) -> String {
    let mut s = format!("q = {}, N = {}, secular variable {}\n", r.q, r.n, r.secular_name);
    s += &format!("{}\n", r.polynomial);
    s += &format!(
        "degree {}, quotient dimension {}, exponents = {} mod {}\n",
        r.degree(),
        r.staircase_dimension,
        r.support.residue.map_or("mixed".to_string(), |x| x.to_string()),
        r.support.modulus
    );
    let approx: Vec<String> = r.roots.approximate_roots().iter().map(|x| format!("{x:.6}")).collect();
    s += &format!("real roots ({}): {}\n", r.roots.total_real_roots(), approx.join(", "));
    for f in &r.fibers {
        for p in &f.points {
            s += &format!("  {} -> ({})\n", f.root, p.s.join(", "));
        }
    }
    for sym in &r.symmetry {
        s += &format!("symmetry {} = {}: {}\n", sym.pair[0], sym.pair[1], if sym.holds { "holds" } else { "fails" });
    }
    s
}

fn load_univariate(input: Option<&PathBuf>, coeffs: Option<&str>, var: &str) -> Result<UniPoly, Failure> {
    if let Some(c) = coeffs {
        let mut v = c
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        v.reverse();
        return Ok(UniPoly::new(v, var));
    }
    let path = input.ok_or_else(|| Failure::Usage("give --input or --coeffs".into()))?;
    let text = read(path)?;
    if let Ok(doc) = serde_json::from_str::<UniPolyJson>(&text) {
        return doc.to_poly().map_err(|e| Failure::Usage(e.to_string()));
    }
    let doc: PolyJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let p = doc.to_poly(OrderKind::Lex).map_err(|e| Failure::Usage(e.to_string()))?;
    let vars = p.variables();
    match vars.as_slice() {
        [] => Ok(UniPoly::new(p.univariate_coeffs(0).unwrap_or_default(), doc.vars.first().cloned().unwrap_or_else(|| var.to_string()))),
        [v] => Ok(UniPoly::from_polynomial(&p, *v).expect("single variable")),
        _ => Err(Failure::Usage("polynomial is not univariate".into())),
    }
}

fn execute(cli: &Cli, cfg: &JobConfig) -> Result<(String, i32), Failure> {
    let json = cfg.format == Format::Json;
    match &cli.command {
        Command::System(sys) => {
            let system = build(sys)?;
            let out = if json {
                to_json(&SystemJson::from_system(&system))
            } else {
                polys_text(&system.equations)
            };
            Ok((out, exit::OK))
        }
        Command::Basis { sys, input, budget } => {
            let (ring_polys, order) = match input {
                Some(path) => {
                    let text = read(path)?;
                    if let Ok(doc) = serde_json::from_str::<SystemJson>(&text) {
                        let s = doc.to_system().map_err(|e| Failure::Usage(e.to_string()))?;
                        (s.equations.clone(), s.ring.order().clone())
                    } else {
                        let doc: BasisJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                        let (ring, polys) = doc.polynomials().map_err(|e| Failure::Usage(e.to_string()))?;
                        (polys, ring.order().clone())
                    }
                }
                None => {
                    let s = build(sys)?;
                    (s.equations.clone(), s.ring.order().clone())
                }
            };
            let opts = JanetOptions {
                budget: budget_of(budget),
                exec: Execution::Sequential,
                ..JanetOptions::default()
            };
            let jb = janet_basis_with(&ring_polys, &order, &opts).map_err(|e| match e {
                qes_core::involutive::InvolutiveError::Budget(b) => Failure::Budget(b.to_string()),
                other => Failure::Usage(other.to_string()),
            })?;
            let out = if json {
                to_json(&BasisJson::from_janet(&jb))
            } else {
                polys_text(&jb.polynomials())
            };
            Ok((out, exit::OK))
        }
        Command::Convert { sys, input, secular, budget, cache } => {
            let lex = match input {
                Some(path) => {
                    let doc: BasisJson = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(e.to_string()))?;
                    let (ring, polys) = doc.polynomials().map_err(|e| Failure::Usage(e.to_string()))?;
                    let n = ring.nvars();
                    let mut prec: Vec<usize> = (0..n).collect();
                    if let Some(name) = secular {
                        let v = ring.var_index(name).ok_or_else(|| Failure::Usage(format!("unknown variable `{name}`")))?;
                        prec.retain(|&i| i != v);
                        prec.push(v);
                    }
                    let order = MonomialOrder::with_precedence(OrderKind::Lex, prec).expect("permutation");
                    fglm_convert_with(&polys, &order, &budget_of(budget)).map_err(|e| match e {
                        qes_core::fglm::FglmError::Budget(b) => Failure::Budget(b.to_string()),
                        other => Failure::Other(other.to_string()),
                    })?
                }
                None => {
                    let system = build(sys)?;
                    let k = secular_index(&system, secular.as_deref())?.unwrap_or_else(|| qes_core::spectra::default_secular(system.q));
                    let opts = SpectrumOptions {
                        budget: budget_of(budget),
                        cache: cache_of(cache),
                        ..SpectrumOptions::default()
                    };
                    let (gb, _, _) = reduced_basis(&system, &opts)?;
                    lex_basis(&system, &gb, k, &opts)?
                }
            };
            let out = if json {
                to_json(&BasisJson::from_polys(&lex.ring, &lex.polynomials))
            } else {
                polys_text(&lex.polynomials)
            };
            Ok((out, exit::OK))
        }
        Command::Spectrum { sys, secular, budget, cache } => {
            let system = build(sys)?;
            let opts = SpectrumOptions {
                normalization: sys.normalization,
                secular: secular_index(&system, secular.as_deref())?,
                budget: budget_of(budget),
                cache: cache_of(cache),
                ..SpectrumOptions::default()
            };
            let report = compute_spectrum(system.q, system.n, &opts)?;
            let out = if json { to_json(&report.to_json()) } else { spectrum_text(&report) };
            Ok((out, exit::OK))
        }
        Command::Verify { sys, secular, all, max_q, max_n, budget, cache } => {
            let opts = SpectrumOptions {
                normalization: sys.normalization,
                budget: budget_of(budget),
                cache: cache_of(cache),
                ..SpectrumOptions::default()
            };
            let jobs = if *all {
                grid(*max_q, *max_n)
            } else {
                let (q, n) = qn(sys)?;
                vec![Job { q, n }]
            };
            let opts = if *all {
                opts
            } else {
                let system = build(sys)?;
                SpectrumOptions {
                    secular: secular_index(&system, secular.as_deref())?,
                    ..opts
                }
            };
            let mut verdicts = Vec::new();
            let mut code = exit::OK;
            for (job, result) in run_batch(jobs, &opts, Execution::available()) {
                match result {
                    Ok(report) => {
                        let v = verify_spectrum(job.q, job.n, &report);
                        if v.status == VerdictStatus::Mismatch {
                            code = code.max(exit::MISMATCH);
                        }
                        verdicts.push(v);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            let out = if json {
                if *all {
                    to_json(&verdicts)
                } else {
                    to_json(&verdicts[0])
                }
            } else {
                verdicts
                    .iter()
                    .map(|v| {
                        format!(
                            "q={} N={} {}: {:?}; matches [{}] misses [{}] extras [{}]\n",
                            v.q,
                            v.n,
                            v.variable,
                            v.status,
                            v.matches.join(", "),
                            v.misses.join(", "),
                            v.extras.join(", ")
                        ) + &v.notes.iter().map(|n| format!("  {n}\n")).collect::<String>()
                    })
                    .collect()
            };
            Ok((out, code))
        }
        Command::Roots { input, coeffs, var, bound } => {
            let p = load_univariate(input.as_ref(), coeffs.as_deref(), var)?;
            if p.is_zero() {
                return Err(Failure::Usage("the zero polynomial has no root report".into()));
            }
            let width = qes_core::poly::Rational::new(1.into(), (1u64 << 20).into());
            let rep = isolate_real_roots_with(&p, *bound, &width);
            let out = if json {
                to_json(&rep.to_json())
            } else {
                let approx: Vec<String> = rep.approximate_roots().iter().map(|x| format!("{x:.6}")).collect();
                format!(
                    "{p}\nreal roots ({}): {}\nresidual degree {}\n",
                    rep.total_real_roots(),
                    approx.join(", "),
                    rep.residual_degree()
                )
            };
            Ok((out, exit::OK))
        }
        Command::Cache { action, cache_dir } => {
            let cache = cache_dir.as_ref().map_or_else(StageCache::from_env, StageCache::new);
            let io = |e: std::io::Error| Failure::Other(e.to_string());
            let out = match action {
                CacheAction::List => {
                    let entries = cache.list().map_err(io)?;
                    if json {
                        to_json(&entries.iter().map(|(k, s)| json!({"key": k, "stages": s})).collect::<Vec<_>>())
                    } else {
                        entries.iter().map(|(k, s)| format!("{k}: {}\n", s.join(", "))).collect()
                    }
                }
                CacheAction::Clear => {
                    let n = cache.clear().map_err(io)?;
                    if json {
                        to_json(&json!({"removed": n}))
                    } else {
                        format!("removed {n} entries\n")
                    }
                }
            };
            Ok((out, exit::OK))
        }
    }
}

fn config(cli: &Cli) -> JobConfig {
    let (name, sys, secular, cache_dir, budget) = match &cli.command {
        Command::System(s) => ("system", Some(s), None, None, None),
        Command::Basis { sys, budget, .. } => ("basis", Some(sys), None, None, Some(budget)),
        Command::Convert { sys, secular, budget, cache, .. } => ("convert", Some(sys), secular.clone(), cache.cache_dir.clone(), Some(budget)),
        Command::Spectrum { sys, secular, budget, cache } => ("spectrum", Some(sys), secular.clone(), cache.cache_dir.clone(), Some(budget)),
        Command::Verify { sys, secular, budget, cache, .. } => ("verify", Some(sys), secular.clone(), cache.cache_dir.clone(), Some(budget)),
        Command::Roots { .. } => ("roots", None, None, None, None),
        Command::Cache { cache_dir, .. } => ("cache", None, None, cache_dir.clone(), None),
    };
    JobConfig {
        command: name.to_string(),
        q: sys.and_then(|s| s.q),
        n: sys.and_then(|s| s.n),
        order: OrderKind::DegRevLex,
        secular,
        normalization: sys.map_or(Normalization::First, |s| s.normalization),
        budget: budget.map_or_else(Budget::standard, budget_of),
        cache_dir,
        format: cli.format,
    }
}

/// Parse `args`, run the command and write the report; returns the exit
/// code (0 ok, 1 usage or other error, 2 verification mismatch, 3 budget).
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let informational = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let _ = write!(out, "{e}");
            return if informational { exit::OK } else { exit::USAGE };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .try_init();
    let cfg = config(&cli);
    log::debug!("{cfg:?}");
    match execute(&cli, &cfg) {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            code
        }
        Err(f) => {
            if cfg.format == Format::Json {
                let _ = writeln!(out, "{}", to_json(&json!({"error": {"kind": f.kind(), "message": f.message()}})));
            } else {
                log::error!("{}", f.message());
                eprintln!("error: {}", f.message());
            }
            f.code()
        }
    }
}
