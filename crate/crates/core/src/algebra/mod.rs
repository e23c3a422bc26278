//! Arithmetic in the complex Clifford algebra Cl(1,3).
//!
//! Elements carry 16 complex coefficients over the blade basis
//! `e, e0, e1, e01, e2, …, e0123`, stored by index mask. The coefficient field is
//! either `f64` (field evaluation) or `Rational64` (exact identity checks).

mod blade;
mod eigen;
mod element;
mod exp;
mod matrix;
mod scalar;
mod serial;

pub use blade::{BladeIndex, Metric, METRIC};
pub use eigen::{hermitian_eigenvalues, hermitian_spectrum, Spectrum};
pub use element::{anticommutator, commutator, linear_combine, Clifford, CliffordElement, ExactElement};
pub use exp::{exp, exp_default, EXP_MAX_TERMS, EXP_SERIES_TOL};
pub use matrix::{gamma_rep, inverse, inverse_with_cap, rank, rep_inverse, Matrix4, Matrix4C, CONDITION_CAP};
pub use scalar::Real;

/// Absolute tolerance used for float-mode equality unless a caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-12;
