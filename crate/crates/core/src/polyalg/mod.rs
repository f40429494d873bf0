//! Exact arithmetic kernel: Gaussian-rational scalars, univariate and
//! multivariate polynomials, row reduction, root location and the text
//! parser for polynomial input.

mod matrix;
mod multipoly;
mod parse;
mod roots;
mod scalar;
mod unipoly;

use thiserror::Error;

pub use matrix::{rank_of, ExactMatrix, Rref};
pub use multipoly::{binomial, mono_basis, Monomial, MultiPoly};
pub use parse::{parse_poly, parse_unipoly};
pub use roots::{complex_roots, coprime_basis, squarefree_decomp, RootApprox, ROOT_TOL};
pub use scalar::{fmt_rational, rat_from_f64, rat_to_f64, GaussScalar};
pub use unipoly::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable x{index} at byte {offset} is out of range for {n_vars} variables")]
    VariableOutOfRange {
        offset: usize,
        index: usize,
        n_vars: usize,
    },
    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },
    #[error("expected {expected} curve components, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots")]
    ConstantPolynomial,
    #[error("root iteration did not converge after {iterations} steps on factor {factor}")]
    RootIterationCap { factor: String, iterations: usize },
}

impl PolyError {
    /// Byte offset for parse errors.
    pub fn offset(&self) -> Option<usize> {
        match self {
            PolyError::Syntax { offset, .. }
            | PolyError::VariableOutOfRange { offset, .. }
            | PolyError::ZeroDenominator { offset } => Some(*offset),
            _ => None,
        }
    }
}
