//! Numerical kernel for the complex Clifford algebra Cl(1,3) and a verification
//! harness for the model Dirac–Yang–Mills equations with a unitary gauge field
//! and a symplectic gauge field.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: blade arithmetic, involutions, exponential map, the fixed
//!   Dirac-type matrix representation and a Hermitian Jacobi eigen-solver.
//! - [`subspaces`]: membership predicates, basis extraction and seeded sampling
//!   for sp(cl(1,3)), Sp(cl(1,3)), Hermitian idempotents and the spaces
//!   I(t), K(t), L(t), G(t).
//! - [`fields`]: closed-form spacetime field configurations with exact
//!   derivatives, a finite-difference fallback, residual evaluators and the
//!   substitution `B = C - (m/4) i h`.
//! - [`symmetries`]: bilinear forms, the equivalence transformations and
//!   residual-level covariance checks.
//!
//! Point-wise evaluation over sample sets runs on rayon when the `parallel`
//! feature (on by default) is enabled and falls back to a plain iterator
//! otherwise; see [`parallel`].

pub mod algebra;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod parallel;
pub mod rng;
pub mod subspaces;
pub mod symmetries;

pub use algebra::{BladeIndex, Clifford, CliffordElement, ExactElement, Matrix4};
pub use error::{Error, Result};
