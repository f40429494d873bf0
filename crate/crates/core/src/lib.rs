//! Exact algebra and value-distribution functionals for holomorphic curves
//! in projective varieties.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyalg`] exact Gaussian-rational polynomials, row reduction, roots;
//! * [`variety`] Hilbert functions, quotient classes and position checks;
//! * [`lp`] a small exact simplex solver;
//! * [`nochka`] Nochka weights, generic subspaces and basis completion;
//! * [`nevan`] counting, characteristic and proximity functions of
//!   polynomial curves, Wronskians and nondegeneracy;
//! * [`verify`] second-main-theorem and uniqueness reports.

pub mod polyalg;
pub mod variety;
pub mod lp;
pub mod nochka;
pub mod nevan;
pub mod verify;
