//! Distinguished subsets of Cl(1,3): grade and parity subspaces,
//! the symplectic Lie algebra and group, Hermitian idempotents and the spaces
//! `I(t)`, `K(t)`, `L(t)`, `G(t)` generated by an idempotent.

mod basis;
mod idempotent;
mod membership;
mod sampling;
mod symplectic_matrix;

pub use basis::{subspace_basis, Space, SubspaceBasis, PIVOT_TOL};
pub use idempotent::{
    exact_standard_idempotent, idempotent_defects, is_hermitian_idempotent, is_hermitian_idempotent_exact,
    HermitianIdempotent, IdempotentCheck,
};
pub use membership::{in_ideal, in_sp_cl, in_sp_group, IdealKind, Membership, MEMBERSHIP_TOL};
pub use sampling::{sample, SpaceSampler};
pub use symplectic_matrix::{matrix_sp_dimension, SymplecticMatrixSpace, MAX_SYMPLECTIC_M};
