//! Physics-side builders: coupling maps, the finite-D banded matrix, the
//! large-D rescaling, the compact integer-stencil system and its kernels.

mod couplings;
mod field;
mod finite_d;
mod kernel;
mod large_d;
mod limits;

use thiserror::Error;

use crate::poly::PolyError;

pub use couplings::{alpha_from_g, g_from_alpha, rational_sqrt, PotentialParams};
pub use field::{Field, QuadSurd};
pub use finite_d::{build_finite_d_matrix, finite_d_ring, last_row_coupling, FiniteDMatrix, FiniteDParams};
pub use kernel::{kernel_vector, q1_wavefunction_coeffs};
pub use large_d::{
    build_large_d_system, elimination_order, mu_tau_f64, s_names, stencil_constant, stencil_diagonal,
    MagyariSystem, Normalization, RescaleMap, SystemJson,
};
pub use limits::{check_large_d_limit, check_singh_constraint, q0_terminating_energy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagyariError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("leading coupling must be positive")]
    NonPositiveLeadingCoupling,
    #[error("{0} is not the square of a rational")]
    NotASquare(String),
    #[error("assignment does not solve row {row}")]
    InconsistentAssignment { row: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
