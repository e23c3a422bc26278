use serde::{Deserialize, Serialize};

use crate::algebra::{commutator, CliffordElement, METRIC};
use crate::error::Result;
use crate::parallel::Execution;

use super::deriv::{central_difference, richardson, DerivMode};
use super::point::{SpacetimePoint, PAIRS};
use super::source::{FieldSetDymym, FieldSetMdymw, FieldSource};
use super::values::{FieldValues, Jet};

type E = CliffordElement;

pub const MDYMW_EQUATIONS: [&str; 4] = ["dirac", "ym_a_curvature", "ym_a_source", "h_transport"];
pub const DYMYM_EQUATIONS: [&str; 5] = ["dirac", "ym_a_curvature", "ym_a_source", "ym_b_curvature", "ym_b_source"];

/// Pointwise residuals (left minus right) of the single-gauge-field system.
#[derive(Debug, Clone, PartialEq)]
pub struct MdymwResidual {
    pub dirac: E,
    /// Indexed by [`PAIRS`].
    pub a_curvature: [E; 6],
    pub a_source: [E; 4],
    /// `[μ][ν]`: `∂_μ h^ν - [C_μ, h^ν]`.
    pub transport: [[E; 4]; 4],
}

/// Pointwise residuals of the two-gauge-field system; `rhs` is the
/// `B`-field source `(3/16) m³ i h^ν` already subtracted in `b_source`.
#[derive(Debug, Clone, PartialEq)]
pub struct DymymResidual {
    pub dirac: E,
    pub a_curvature: [E; 6],
    pub a_source: [E; 4],
    pub b_curvature: [E; 6],
    pub b_source: [E; 4],
    pub rhs: [E; 4],
}

fn max_norm<'a>(it: impl IntoIterator<Item = &'a E>) -> f64 {
    it.into_iter().map(E::norm).fold(0.0, f64::max)
}

impl MdymwResidual {
    /// Per-equation norms in [`MDYMW_EQUATIONS`] order.
    pub fn norms(&self) -> [f64; 4] {
        [
            self.dirac.norm(),
            max_norm(&self.a_curvature),
            max_norm(&self.a_source),
            max_norm(self.transport.iter().flatten()),
        ]
    }
}

impl DymymResidual {
    /// Per-equation norms in [`DYMYM_EQUATIONS`] order.
    pub fn norms(&self) -> [f64; 5] {
        [
            self.dirac.norm(),
            max_norm(&self.a_curvature),
            max_norm(&self.a_source),
            max_norm(&self.b_curvature),
            max_norm(&self.b_source),
        ]
    }
}

fn eta(mu: usize) -> f64 {
    METRIC.diag(mu)
}

/// `i h^μ (∂_μφ + φ A_μ - K_μ φ)` with `K` the second gauge slot.
fn dirac_operator(jet: &Jet) -> E {
    let v = &jet.value;
    (0..4)
        .map(|mu| v.h[mu].times_i() * (jet.d[mu].phi + v.phi * v.a[mu] - v.gauge[mu] * v.phi))
        .sum()
}

/// `∂_μ X_ν - ∂_ν X_μ - [X_μ, X_ν] - Y_{μν}` over [`PAIRS`].
fn curvature(jet: &Jet, pot: impl Fn(&FieldValues) -> &[E; 4], fld: impl Fn(&FieldValues) -> &[[E; 4]; 4]) -> [E; 6] {
    let x = pot(&jet.value);
    std::array::from_fn(|p| {
        let (mu, nu) = PAIRS[p];
        pot(&jet.d[mu])[nu] - pot(&jet.d[nu])[mu] - commutator(&x[mu], &x[nu]) - fld(&jet.value)[mu][nu]
    })
}

/// `∂_μ Y^{μν} - [X_μ, Y^{μν}]`, with `Y` stored lowered.
fn divergence(jet: &Jet, pot: impl Fn(&FieldValues) -> &[E; 4], fld: impl Fn(&FieldValues) -> &[[E; 4]; 4]) -> [E; 4] {
    let x = pot(&jet.value);
    let y = fld(&jet.value);
    std::array::from_fn(|nu| {
        (0..4)
            .map(|mu| {
                let s = eta(mu) * eta(nu);
                (fld(&jet.d[mu])[mu][nu] - commutator(&x[mu], &y[mu][nu])) * s
            })
            .sum()
    })
}

/// `φ† β i h^ν φ`.
fn spinor_current(v: &FieldValues) -> [E; 4] {
    let left = v.phi.herm_conj() * E::beta();
    std::array::from_fn(|nu| left * v.h[nu].times_i() * v.phi)
}

/// `(3/16) m³ i h^ν`.
pub fn b_source_rhs(m: f64, v: &FieldValues) -> [E; 4] {
    let c = 3.0 / 16.0 * m * m * m;
    std::array::from_fn(|nu| v.h[nu].times_i() * c)
}

pub fn mdymw_components(m: f64, jet: &Jet) -> MdymwResidual {
    let v = &jet.value;
    let current = spinor_current(v);
    let div = divergence(jet, |f| &f.a, |f| &f.f);
    MdymwResidual {
        dirac: dirac_operator(jet) - v.phi * m,
        a_curvature: curvature(jet, |f| &f.a, |f| &f.f),
        a_source: std::array::from_fn(|nu| div[nu] - current[nu]),
        transport: std::array::from_fn(|mu| {
            std::array::from_fn(|nu| jet.d[mu].h[nu] - commutator(&v.gauge[mu], &v.h[nu]))
        }),
    }
}

pub fn dymym_components(m: f64, jet: &Jet) -> DymymResidual {
    let v = &jet.value;
    let current = spinor_current(v);
    let rhs = b_source_rhs(m, v);
    let div_a = divergence(jet, |f| &f.a, |f| &f.f);
    let div_b = divergence(jet, |f| &f.gauge, |f| &f.g);
    DymymResidual {
        dirac: dirac_operator(jet),
        a_curvature: curvature(jet, |f| &f.a, |f| &f.f),
        a_source: std::array::from_fn(|nu| div_a[nu] - current[nu]),
        b_curvature: curvature(jet, |f| &f.gauge, |f| &f.g),
        b_source: std::array::from_fn(|nu| div_b[nu] - rhs[nu]),
        rhs,
    }
}

/// Worst residual of one equation and a point attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationResidual {
    pub name: String,
    pub max: f64,
    pub at: Option<SpacetimePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub system: String,
    pub equations: Vec<EquationResidual>,
    pub deriv: DerivMode,
    pub step: Option<f64>,
    pub grid: String,
    pub points: usize,
    /// Largest `‖(3/16) m³ i h^ν‖` over points and `ν`.
    pub rhs_norm: Option<f64>,
    /// Largest `‖(3/16) m³ i h^ν‖ / ‖i h^ν‖`; equals `(3/16)|m|³`.
    pub rhs_normalized: Option<f64>,
}

impl ResidualRecord {
    pub fn max_residual(&self) -> f64 {
        self.equations.iter().map(|e| e.max).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.equations.iter().find(|e| e.name == name).map(|e| e.max)
    }
}

/// Evaluation strategy: derivative mode and point-level parallelism.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Evaluator {
    pub deriv: DerivMode,
    pub exec: Execution,
}

fn aggregate(names: &[&str], rows: &[(SpacetimePoint, Vec<f64>)]) -> Vec<EquationResidual> {
    names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let mut best = EquationResidual { name: name.to_string(), max: 0.0, at: None };
            for (x, norms) in rows {
                // NaN propagates so a broken evaluation never reads as a pass
                if best.at.is_none() || norms[k] > best.max || norms[k].is_nan() {
                    best.max = norms[k];
                    best.at = Some(*x);
                    if norms[k].is_nan() {
                        break;
                    }
                }
            }
            best
        })
        .collect()
}

impl Evaluator {
    pub fn new(deriv: DerivMode) -> Self {
        Evaluator { deriv, exec: Execution::default() }
    }

    pub fn with_execution(self, exec: Execution) -> Self {
        Evaluator { exec, ..self }
    }

    /// Values and first derivatives under the configured mode.
    pub fn jet(&self, source: &dyn FieldSource, x: &SpacetimePoint) -> Result<Jet> {
        let f = |p: &SpacetimePoint| source.values(p);
        match self.deriv {
            DerivMode::Exact => source.jet(x),
            DerivMode::Central { step } => fd_jet(source, x, |mu| central_difference(f, x, mu, step)),
            DerivMode::Richardson { step } => fd_jet(source, x, |mu| richardson(f, x, mu, step)),
        }
    }

    fn record(&self, system: &str, names: &[&str], points: &[SpacetimePoint], rows: Vec<(SpacetimePoint, Vec<f64>)>) -> ResidualRecord {
        ResidualRecord {
            system: system.to_string(),
            equations: aggregate(names, &rows),
            deriv: self.deriv,
            step: self.deriv.step(),
            grid: format!("{} points in [0,1]^4", points.len()),
            points: points.len(),
            rhs_norm: None,
            rhs_normalized: None,
        }
    }

    pub fn mdymw(&self, fs: &FieldSetMdymw, points: &[SpacetimePoint]) -> Result<ResidualRecord> {
        let rows = self.exec.try_map(points, |x| {
            let r = mdymw_components(fs.m, &self.jet(fs.source.as_ref(), x)?);
            Ok((*x, r.norms().to_vec()))
        })?;
        Ok(self.record("mdymw", &MDYMW_EQUATIONS, points, rows))
    }

    pub fn dymym(&self, fs: &FieldSetDymym, points: &[SpacetimePoint]) -> Result<ResidualRecord> {
        let rows = self.exec.try_map(points, |x| {
            let jet = self.jet(fs.source.as_ref(), x)?;
            let r = dymym_components(fs.m, &jet);
            let mut rhs = 0.0f64;
            let mut ratio = 0.0f64;
            for nu in 0..4 {
                let n = r.rhs[nu].norm();
                rhs = rhs.max(n);
                let scale = jet.value.h[nu].norm();
                if scale > 0.0 {
                    ratio = ratio.max(n / scale);
                }
            }
            let mut norms = r.norms().to_vec();
            norms.extend([rhs, ratio]);
            Ok((*x, norms))
        })?;
        let mut rec = self.record("dymym", &DYMYM_EQUATIONS, points, rows.clone());
        if !rows.is_empty() {
            rec.rhs_norm = Some(rows.iter().map(|r| r.1[5]).fold(0.0, f64::max));
            rec.rhs_normalized = Some(rows.iter().map(|r| r.1[6]).fold(0.0, f64::max));
        }
        Ok(rec)
    }
}

fn fd_jet(source: &dyn FieldSource, x: &SpacetimePoint, d: impl Fn(usize) -> Result<FieldValues>) -> Result<Jet> {
    Ok(Jet { value: source.values(x)?, d: Box::new([d(0)?, d(1)?, d(2)?, d(3)?]) })
}

pub fn residual_mdymw(fs: &FieldSetMdymw, points: &[SpacetimePoint], deriv: DerivMode) -> Result<ResidualRecord> {
    Evaluator::new(deriv).mdymw(fs, points)
}

pub fn residual_dymym(fs: &FieldSetDymym, points: &[SpacetimePoint], deriv: DerivMode) -> Result<ResidualRecord> {
    Evaluator::new(deriv).dymym(fs, points)
}
