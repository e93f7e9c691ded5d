//! Exact polynomial-system solving for the large-dimension Magyari systems
//! of quasi-exactly solvable anharmonic oscillators.
//!
//! The pipeline builds the banded system for `(q, N)`, completes it to a
//! minimal Janet basis under degrevlex, extracts the reduced Gröbner basis,
//! converts it to lex with FGLM and certifies the real roots of the
//! resulting univariate secular polynomial.

pub mod budget;
pub mod exec;
pub mod fglm;
pub mod involutive;
pub mod magyari;
pub mod poly;
pub mod spectra;
pub mod unipoly;

pub use poly::{Monomial, MonomialOrder, OrderKind, PolyError, Polynomial, Rational, Ring};
