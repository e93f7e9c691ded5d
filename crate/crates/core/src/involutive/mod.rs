//! Janet division and the completion to minimal Janet bases.

pub mod basis;
pub mod json;
pub mod partition;

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::poly::{PolyError, Polynomial};

pub use basis::{
    is_janet_basis, janet_basis, janet_basis_with, janet_head_normal_form, janet_normal_form,
    nonmultiplicative_vars, CriterionHit, JanetBasisResult, JanetOptions, JanetStats, NormalFormMode, Triple,
};
pub use partition::{janet_divides, janet_partition, JanetPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutiveError {
    #[error("empty generating set")]
    EmptyInput,
    #[error("generator {0} is the zero polynomial")]
    ZeroPolynomial(usize),
    #[error("{0} variables exceed the supported 32")]
    TooManyVariables(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Reduced Gröbner basis inside a minimal Janet basis: the elements that
/// are their own ancestors, monic, sorted by increasing leading monomial.
pub fn extract_reduced_gb(jb: &JanetBasisResult) -> Vec<Polynomial> {
    let own: Vec<&Triple> = jb
        .basis
        .iter()
        .filter(|t| t.pol.leading_monomial() == Some(&t.anc) || t.pol.is_constant())
        .collect();
    // Guard: every selected head must be minimal among the Janet heads.
    let lms: Vec<_> = jb.basis.iter().map(|t| t.pol.leading_monomial().unwrap().clone()).collect();
    let mut out = Vec::with_capacity(own.len());
    for t in own {
        let lm = t.pol.leading_monomial().unwrap();
        if lms.iter().any(|o| o != lm && o.divides(lm)) {
            log::warn!("discarding non-minimal ancestor {lm:?} during extraction");
            continue;
        }
        out.push(reduce_tail(&t.pol, &jb.basis));
    }
    out
}

fn reduce_tail(p: &Polynomial, basis: &[Triple]) -> Polynomial {
    let (lm, lc) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let head = Polynomial::term(p.ring(), lm, lc);
    let tail = p - &head;
    let rest = janet_normal_form(&tail, basis, NormalFormMode::Full);
    (&head + &rest).monic()
}
