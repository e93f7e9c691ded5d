//! The end-to-end spectrum pipeline and the closed-form oracles it is
//! checked against.

mod batch;
mod cache;
mod closed_form;
mod fiber;
mod pipeline;
mod verify;

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::fglm::FglmError;
use crate::involutive::InvolutiveError;
use crate::magyari::MagyariError;
use crate::poly::PolyError;

pub use batch::{grid, run_batch, Job};
pub use cache::{algorithm_hash, Manifest, StageCache, ALGORITHM_VERSION, DEFAULT_CACHE_DIR};
pub use closed_form::{
    closed_form_spectrum, q5_factor_families, secular_support_check, PredictedRoot, Q5Families, SpectrumTable,
    SupportCheck,
};
pub use fiber::{solve_fiber, Fiber, FiberField, FiberPoint};
pub use pipeline::{
    compute_spectrum, default_secular, lex_basis, mirror_pairs, reduced_basis, PointReport, RootFiber, SecularReport,
    SecularReportJson, SpectrumOptions, SymmetryFinding,
};
pub use verify::{verify_spectrum, CompanionCheck, Verdict, VerdictStatus};

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("no closed form is known for q = {0}")]
    NoClosedForm(usize),
    #[error("no factor families are known for N = {0}")]
    UnsupportedN(usize),
    #[error("secular variable index {0} is out of range")]
    BadSecular(usize),
    #[error("lex basis has no univariate polynomial in {0}")]
    NoUnivariate(String),
    #[error("{source} (completed stages: {completed:?})")]
    Budget {
        stage: String,
        completed: Vec<String>,
        source: BudgetExceeded,
    },
    #[error(transparent)]
    Magyari(#[from] MagyariError),
    #[error(transparent)]
    Involutive(#[from] InvolutiveError),
    #[error(transparent)]
    Fglm(#[from] FglmError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
