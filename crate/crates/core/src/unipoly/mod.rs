//! Exact univariate toolkit: square-free parts, rational roots, integer
//! quadratic factors and Sturm-certified real-root isolation.

mod dense;
mod roots;
mod sturm;

pub use dense::{UniPoly, UniPolyJson};
pub use roots::{
    bounded_quadratic_factors, isolate_real_roots, isolate_real_roots_with, rational_roots, real_root_count,
    squarefree_part, Quadratic, QuadraticRoot, QuadraticSplit, RealRootReport, RealRootReportJson,
    DEFAULT_QUADRATIC_BOUND,
};
pub use sturm::{cauchy_bound, isolate, refine, root_bound, sturm_real_root_count, Bound, Isolated, SturmChain};
