//! Spacetime field configurations and residual evaluation.
//!
//! Fields are closed-form functions of `x ∈ ℝ^{1,3}` with exact first
//! derivatives ([`Jet`]); a central-difference path ([`DerivMode::Central`],
//! [`DerivMode::Richardson`]) recomputes derivatives from point values only.

mod deriv;
mod family;
mod identities;
mod point;
mod residual;
mod shape;
mod source;
mod values;

pub use deriv::{central_difference, fd_derivative, DerivMode, LinearValue};
pub use family::{eval_family, ElementField, Factor, FamilyJet, FieldFamily};
pub use identities::{
    bianchi_current_check, check_h_identities, check_hb_identities, BianchiReport, HIdentityReport, HbReport,
    PotentialFamily,
};
pub use point::{lower, sample_points, SpacetimePoint, PAIRS};
pub use residual::{
    dymym_components, mdymw_components, residual_dymym, residual_mdymw, DymymResidual, EquationResidual,
    Evaluator, MdymwResidual, ResidualRecord, DYMYM_EQUATIONS, MDYMW_EQUATIONS,
};
pub use shape::{Monomial, Shape, Wave};
pub use source::{
    build_pure_gauge, reduce, FieldOverlay, FieldSetDymym, FieldSetMdymw, FieldSource, Overlay, PhiChoice,
    PureGauge, Reduced,
};
pub use values::{FieldValues, Jet};
