use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{inverse, CliffordElement};
use crate::error::{Error, Result};
use crate::fields::{eval_family, FieldFamily, FieldSetDymym, FieldSource, FieldValues, Jet, SpacetimePoint};
use crate::subspaces::{in_ideal, in_sp_group, HermitianIdempotent, IdealKind, MEMBERSHIP_TOL};

type E = CliffordElement;

/// An equivalence transformation of the two-gauge-field system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum TransformationSpec {
    /// Constant unitary `U`: `φ → φU`, `A → U⁻¹AU`, `F → U⁻¹FU`, `t → U⁻¹tU`.
    GlobalUnitary(CliffordElement),
    /// `U(x) ∈ G(t)` given by a family with generators in `L(t)`:
    /// `φ → φU`, `A → U⁻¹AU - U⁻¹∂U`, `F → U⁻¹FU`.
    GaugeUnitary(FieldFamily),
    /// `W(x) ∈ Sp(cl(1,3))`: `φ → W⁻¹φ`, `h → W⁻¹hW`, `B → W⁻¹BW - W⁻¹∂W`, `G → W⁻¹GW`.
    GaugeSymplectic(FieldFamily),
    /// Complex conjugation of every field, `h → -h̄`, `t → t̄`.
    Conjugation,
    /// `φ → φ̄J`, `h → -h̄`, `A → J⁻¹ĀJ`, `F → J⁻¹F̄J`, `B → B̄`, `G → Ḡ`.
    #[serde(rename = "discrete_J")]
    DiscreteJ,
}

/// Transformation element at a point: value, inverse and derivatives.
#[derive(Debug, Clone)]
pub struct PayloadJet {
    pub value: E,
    pub inv: E,
    pub first: [E; 4],
    pub second: [[E; 4]; 4],
}

impl PayloadJet {
    fn constant(value: E) -> Result<Self> {
        Ok(PayloadJet { value, inv: inverse(&value)?, first: [E::zero(); 4], second: [[E::zero(); 4]; 4] })
    }

    fn from_family(family: &FieldFamily, x: &SpacetimePoint, order: usize) -> Result<Self> {
        let jet = eval_family(family, x, order)?;
        Ok(PayloadJet { inv: inverse(&jet.value)?, value: jet.value, first: jet.first, second: jet.second })
    }

    /// `∂_α (P⁻¹) = -P⁻¹ ∂_αP P⁻¹`.
    fn inv_first(&self, alpha: usize) -> E {
        -(self.inv * self.first[alpha] * self.inv)
    }
}

impl TransformationSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            TransformationSpec::GlobalUnitary(_) => "global_unitary",
            TransformationSpec::GaugeUnitary(_) => "gauge_unitary",
            TransformationSpec::GaugeSymplectic(_) => "gauge_symplectic",
            TransformationSpec::Conjugation => "conjugation",
            TransformationSpec::DiscreteJ => "discrete_J",
        }
    }

    /// Payload at `x` with derivatives to `order`; `None` for the discrete kinds.
    pub fn payload(&self, x: &SpacetimePoint, order: usize) -> Result<Option<PayloadJet>> {
        match self {
            TransformationSpec::GlobalUnitary(u) => PayloadJet::constant(*u).map(Some),
            TransformationSpec::GaugeUnitary(fam) | TransformationSpec::GaugeSymplectic(fam) => {
                PayloadJet::from_family(fam, x, order).map(Some)
            }
            TransformationSpec::Conjugation | TransformationSpec::DiscreteJ => Ok(None),
        }
    }

    /// Structural payload checks: `U` unitary, family generators in `L(t)`
    /// or `sp(cl(1,3))`.
    pub fn validate(&self, t: &HermitianIdempotent) -> Result<()> {
        match self {
            TransformationSpec::GlobalUnitary(u) => {
                let defect = (u.herm_conj() * *u).distance(&E::unit());
                if defect > MEMBERSHIP_TOL {
                    return Err(Error::Membership(format!("global payload not unitary, U†U - e = {defect:.3e}")));
                }
                inverse(u).map(|_| ())
            }
            TransformationSpec::GaugeUnitary(fam) => {
                for f in &fam.factors {
                    let m = in_ideal(&f.generator, t, IdealKind::LieAlgebra, MEMBERSHIP_TOL);
                    if !m.holds {
                        return Err(Error::Membership(format!("gauge generator outside L(t) by {:.3e}", m.residual)));
                    }
                }
                Ok(())
            }
            TransformationSpec::GaugeSymplectic(fam) => {
                let defect = fam.sp_defect();
                if defect > MEMBERSHIP_TOL {
                    return Err(Error::Membership(format!("symplectic generator outside sp(cl(1,3)) by {defect:.3e}")));
                }
                Ok(())
            }
            TransformationSpec::Conjugation | TransformationSpec::DiscreteJ => Ok(()),
        }
    }

    /// Largest pointwise defect of `U ∈ G(t)` or `W ∈ Sp(cl(1,3))` over `points`.
    pub fn payload_defect(&self, t: &HermitianIdempotent, points: &[SpacetimePoint]) -> Result<f64> {
        let mut worst = 0.0f64;
        for x in points {
            let residual = match (self, self.payload(x, 0)?) {
                (TransformationSpec::GaugeUnitary(_), Some(p)) => {
                    in_ideal(&p.value, t, IdealKind::GaugeGroup, f64::INFINITY).residual
                }
                (TransformationSpec::GaugeSymplectic(_), Some(p)) => in_sp_group(&p.value, f64::INFINITY).residual,
                (TransformationSpec::GlobalUnitary(u), _) => (u.herm_conj() * *u).distance(&E::unit()),
                _ => 0.0,
            };
            worst = worst.max(residual);
        }
        Ok(worst)
    }

    /// Image of the idempotent: `U⁻¹tU` for a global unitary, `t̄` for
    /// conjugation, unchanged otherwise.
    pub fn transform_idempotent(&self, t: &HermitianIdempotent) -> Result<HermitianIdempotent> {
        let label = t.label().map(str::to_string);
        Ok(match self {
            TransformationSpec::GlobalUnitary(u) => {
                HermitianIdempotent::transported(inverse(u)? * *t.element() * *u, label.map(|l| format!("U⁻¹{l}U")))
            }
            TransformationSpec::Conjugation => {
                HermitianIdempotent::transported(t.element().complex_conj(), label.map(|l| format!("conj({l})")))
            }
            _ => t.clone(),
        })
    }
}

/// `(L X R, ∂(L X R))` by the product rule.
fn sandwich(l: &E, x: &E, r: &E, dl: &E, dx: &E, dr: &E) -> (E, E) {
    (*l * *x * *r, *dl * *x * *r + *l * *dx * *r + *l * *x * *dr)
}

fn unitary_jet(jet: &Jet, p: &PayloadJet, with_derivatives: bool) -> Jet {
    let (u, ui) = (p.value, p.inv);
    let mut out = jet.clone();
    let v = &jet.value;
    out.value.phi = v.phi * u;
    for mu in 0..4 {
        out.value.a[mu] = ui * v.a[mu] * u - ui * p.first[mu];
        for nu in 0..4 {
            out.value.f[mu][nu] = ui * v.f[mu][nu] * u;
        }
    }
    if with_derivatives {
        for alpha in 0..4 {
            let d = &jet.d[alpha];
            let (du, dui) = (p.first[alpha], p.inv_first(alpha));
            let o = &mut out.d[alpha];
            o.phi = d.phi * u + v.phi * du;
            for mu in 0..4 {
                let conj = sandwich(&ui, &v.a[mu], &u, &dui, &d.a[mu], &du).1;
                o.a[mu] = conj - dui * p.first[mu] - ui * p.second[alpha][mu];
                for nu in 0..4 {
                    o.f[mu][nu] = sandwich(&ui, &v.f[mu][nu], &u, &dui, &d.f[mu][nu], &du).1;
                }
            }
        }
    }
    out
}

fn symplectic_jet(jet: &Jet, p: &PayloadJet, with_derivatives: bool) -> Jet {
    let (w, wi) = (p.value, p.inv);
    let mut out = jet.clone();
    let v = &jet.value;
    out.value.phi = wi * v.phi;
    for mu in 0..4 {
        out.value.h[mu] = wi * v.h[mu] * w;
        out.value.gauge[mu] = wi * v.gauge[mu] * w - wi * p.first[mu];
        for nu in 0..4 {
            out.value.g[mu][nu] = wi * v.g[mu][nu] * w;
        }
    }
    if with_derivatives {
        for alpha in 0..4 {
            let d = &jet.d[alpha];
            let (dw, dwi) = (p.first[alpha], p.inv_first(alpha));
            let o = &mut out.d[alpha];
            o.phi = dwi * v.phi + wi * d.phi;
            for mu in 0..4 {
                o.h[mu] = sandwich(&wi, &v.h[mu], &w, &dwi, &d.h[mu], &dw).1;
                let conj = sandwich(&wi, &v.gauge[mu], &w, &dwi, &d.gauge[mu], &dw).1;
                o.gauge[mu] = conj - dwi * p.first[mu] - wi * p.second[alpha][mu];
                for nu in 0..4 {
                    o.g[mu][nu] = sandwich(&wi, &v.g[mu][nu], &w, &dwi, &d.g[mu][nu], &dw).1;
                }
            }
        }
    }
    out
}

/// Slot map of the discrete kinds; real-linear, so it acts on derivatives unchanged.
fn discrete_values(v: &FieldValues, with_j: bool) -> FieldValues {
    let c = |x: &E| x.complex_conj();
    let j = E::j();
    let ji = -j;
    let mut out = v.map(c);
    for mu in 0..4 {
        out.h[mu] = -v.h[mu].complex_conj();
    }
    if with_j {
        out.phi = out.phi * j;
        for mu in 0..4 {
            out.a[mu] = ji * out.a[mu] * j;
            for nu in 0..4 {
                out.f[mu][nu] = ji * out.f[mu][nu] * j;
            }
        }
    }
    out
}

impl TransformationSpec {
    /// Transformed values, and first derivatives when `with_derivatives`.
    pub fn transform_jet(&self, jet: &Jet, x: &SpacetimePoint, with_derivatives: bool) -> Result<Jet> {
        let order = if with_derivatives { 2 } else { 1 };
        Ok(match self {
            TransformationSpec::GlobalUnitary(_) | TransformationSpec::GaugeUnitary(_) => {
                unitary_jet(jet, &self.payload(x, order)?.expect("unitary payload"), with_derivatives)
            }
            TransformationSpec::GaugeSymplectic(_) => {
                symplectic_jet(jet, &self.payload(x, order)?.expect("symplectic payload"), with_derivatives)
            }
            TransformationSpec::Conjugation | TransformationSpec::DiscreteJ => {
                let with_j = matches!(self, TransformationSpec::DiscreteJ);
                Jet {
                    value: discrete_values(&jet.value, with_j),
                    d: Box::new(std::array::from_fn(|mu| discrete_values(&jet.d[mu], with_j))),
                }
            }
        })
    }
}

/// Field source seen through a transformation.
pub struct Transformed {
    pub base: Arc<dyn FieldSource>,
    pub spec: TransformationSpec,
}

impl FieldSource for Transformed {
    fn jet(&self, x: &SpacetimePoint) -> Result<Jet> {
        self.spec.transform_jet(&self.base.jet(x)?, x, true)
    }

    fn values(&self, x: &SpacetimePoint) -> Result<FieldValues> {
        Ok(self.spec.transform_jet(&Jet::constant(self.base.values(x)?), x, false)?.value)
    }
}

/// Transformed field set; the payload is validated first.
pub fn apply(fs: &FieldSetDymym, spec: &TransformationSpec) -> Result<FieldSetDymym> {
    spec.validate(&fs.t)?;
    Ok(FieldSetDymym {
        m: fs.m,
        t: spec.transform_idempotent(&fs.t)?,
        source: Arc::new(Transformed { base: fs.source.clone(), spec: spec.clone() }),
    })
}

/// Transformed field values at one point.
pub fn apply_at(fs: &FieldSetDymym, spec: &TransformationSpec, x: &SpacetimePoint) -> Result<FieldValues> {
    apply(fs, spec)?.source.values(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{build_pure_gauge, check_h_identities, reduce, PhiChoice, Shape};
    use crate::subspaces::{Space, SpaceSampler};
    use crate::algebra::exp_default;

    fn base() -> FieldSetDymym {
        let t = HermitianIdempotent::standard(2).unwrap();
        reduce(&build_pure_gauge(&FieldFamily::default(), &t, 1.0, PhiChoice::Zero).unwrap())
    }

    #[test]
    fn identity_gauge_is_identity() {
        let fs = base();
        let x = SpacetimePoint::new([0.1, 0.4, 0.2, 0.9]);
        let before = fs.source.jet(&x).unwrap();
        let after = apply(&fs, &TransformationSpec::GaugeUnitary(FieldFamily::default())).unwrap().source.jet(&x).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn discrete_j_negates_standard_frame() {
        let fs = base();
        let once = apply(&fs, &TransformationSpec::DiscreteJ).unwrap();
        let v = once.source.values(&SpacetimePoint::ORIGIN).unwrap();
        for mu in 0..4 {
            assert_eq!(v.h[mu], -E::generator(mu));
        }
        // twice: h and B return, φ picks up J² = -e
        let twice = apply(&once, &TransformationSpec::DiscreteJ).unwrap();
        let w = twice.source.values(&SpacetimePoint::ORIGIN).unwrap();
        let v0 = fs.source.values(&SpacetimePoint::ORIGIN).unwrap();
        assert_eq!(w.h, v0.h);
        assert_eq!(w.gauge, v0.gauge);
        assert_eq!(E::j() * E::j(), -E::unit());
    }

    #[test]
    fn constant_symplectic_frame_keeps_relations() {
        let sampler = SpaceSampler::new(Space::SpAlgebra).unwrap();
        let mut rng = crate::rng::rng_from_seed(3);
        let v = sampler.draw_algebra(&mut rng, 0.8);
        let fam = FieldFamily::single(v, Shape::monomial(1.0, [0; 4]));
        let out = apply(&base(), &TransformationSpec::GaugeSymplectic(fam)).unwrap();
        let vals = out.source.values(&SpacetimePoint::ORIGIN).unwrap();
        assert!(check_h_identities(&vals.h).max() <= 1e-10);
        let w = exp_default(&v).unwrap();
        assert!(vals.h[2].approx_eq(&(inverse(&w).unwrap() * E::generator(2) * w), 1e-12));
    }

    #[test]
    fn global_unitary_moves_idempotent() {
        let u = exp_default(&(E::basis(&[1, 2]) * 0.4)).unwrap();
        let out = apply(&base(), &TransformationSpec::GlobalUnitary(u)).unwrap();
        assert!(out.t.check().idempotent <= 1e-12);
        assert!(apply(&base(), &TransformationSpec::GlobalUnitary(E::unit() * 2.0)).is_err());
    }

    #[test]
    fn payload_validation() {
        let fs = base();
        let bad = FieldFamily::single(E::generator(1), Shape::coordinate(0));
        assert!(matches!(apply(&fs, &TransformationSpec::GaugeSymplectic(bad.clone())), Err(Error::Membership(_))));
        assert!(matches!(apply(&fs, &TransformationSpec::GaugeUnitary(bad)), Err(Error::Membership(_))));
    }

    #[test]
    fn spec_json_layout() {
        let spec = TransformationSpec::DiscreteJ;
        assert_eq!(serde_json::to_value(&spec).unwrap(), serde_json::json!({"kind": "discrete_J"}));
        let g = TransformationSpec::GlobalUnitary(E::unit());
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<TransformationSpec>(&json).unwrap(), g);
        assert!(json.starts_with(r#"{"kind":"global_unitary","payload":"#));
    }
}
