use serde::{Deserialize, Serialize};

use crate::algebra::CliffordElement;
use crate::error::{Error, Result};

use super::point::SpacetimePoint;

/// How spatial derivatives of fields are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DerivMode {
    /// Closed-form derivatives carried by the field sources.
    #[default]
    Exact,
    /// Plain central differences, error O(step²).
    Central { step: f64 },
    /// Central differences at `step` and `step / 2` with one Richardson level, error O(step⁴).
    Richardson { step: f64 },
}

impl DerivMode {
    pub fn step(&self) -> Option<f64> {
        match self {
            DerivMode::Exact => None,
            DerivMode::Central { step } | DerivMode::Richardson { step } => Some(*step),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DerivMode::Exact => "exact",
            DerivMode::Central { .. } => "central",
            DerivMode::Richardson { .. } => "richardson",
        }
    }
}

/// Values that finite differences can combine: `a·x + b·y`.
pub trait LinearValue: Sized {
    fn lin2(a: f64, x: &Self, b: f64, y: &Self) -> Self;
}

impl LinearValue for CliffordElement {
    fn lin2(a: f64, x: &Self, b: f64, y: &Self) -> Self {
        *x * a + *y * b
    }
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("finite-difference step must be positive, got {step}")))
    }
}

/// `(f(x + h ε_μ) - f(x - h ε_μ)) / 2h`.
pub fn central_difference<V: LinearValue>(
    f: impl Fn(&SpacetimePoint) -> Result<V>,
    x: &SpacetimePoint,
    mu: usize,
    step: f64,
) -> Result<V> {
    check_step(step)?;
    let plus = f(&x.shifted(mu, step))?;
    let minus = f(&x.shifted(mu, -step))?;
    let s = 0.5 / step;
    Ok(V::lin2(s, &plus, -s, &minus))
}

/// Central difference with one Richardson extrapolation level: `(4 D(h/2) - D(h)) / 3`.
pub fn richardson<V: LinearValue>(
    f: impl Fn(&SpacetimePoint) -> Result<V>,
    x: &SpacetimePoint,
    mu: usize,
    step: f64,
) -> Result<V> {
    let coarse = central_difference(&f, x, mu, step)?;
    let fine = central_difference(&f, x, mu, 0.5 * step)?;
    Ok(V::lin2(4.0 / 3.0, &fine, -1.0 / 3.0, &coarse))
}

/// Derivative of an element-valued function along `x^μ` (Richardson-extrapolated).
pub fn fd_derivative(
    f: impl Fn(&SpacetimePoint) -> Result<CliffordElement>,
    x: &SpacetimePoint,
    mu: usize,
    step: f64,
) -> Result<CliffordElement> {
    richardson(f, x, mu, step)
}
