//! Equivalence transformations, bilinear forms and covariance checks.
//!
//! A transformation acts on a [`FieldSetDymym`](crate::fields::FieldSetDymym)
//! lazily, through a wrapping field source with exact derivatives, so residuals
//! before and after can be compared point by point.

mod bilinear;
mod covariance;
mod transform;

pub use bilinear::{antisymmetrized_product, bilinear_form, BilinearForm};
pub use covariance::{
    check_current_conservation, covariance_check, expected_residual, group_action_defect, CovarianceEntry,
    CovarianceReport, CurrentReport,
};
pub use transform::{apply, apply_at, PayloadJet, TransformationSpec, Transformed};
