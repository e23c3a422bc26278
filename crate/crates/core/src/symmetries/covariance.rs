use serde::Serialize;

use crate::algebra::{commutator, CliffordElement};
use crate::error::Result;
use crate::fields::{dymym_components, DymymResidual, FieldFamily, FieldSetDymym, SpacetimePoint, DYMYM_EQUATIONS};
use crate::parallel::Execution;

use super::transform::{apply, PayloadJet, TransformationSpec};

type E = CliffordElement;

fn map_residual(r: &DymymResidual, dirac: impl Fn(&E) -> E, a: impl Fn(&E) -> E, b: impl Fn(&E) -> E) -> DymymResidual {
    DymymResidual {
        dirac: dirac(&r.dirac),
        a_curvature: r.a_curvature.map(|x| a(&x)),
        a_source: r.a_source.map(|x| a(&x)),
        b_curvature: r.b_curvature.map(|x| b(&x)),
        b_source: r.b_source.map(|x| b(&x)),
        rhs: r.rhs.map(|x| b(&x)),
    }
}

/// The residual a transformation should produce from `r`:
/// unitary `U`: Dirac `rU`, `A`-equations `U⁻¹rU`, `B`-equations unchanged;
/// symplectic `W`: Dirac `W⁻¹r`, `A`-equations unchanged, `B`-equations `W⁻¹rW`;
/// conjugation: `r̄` throughout; discrete `J`: Dirac `r̄J`, `A`-equations `J⁻¹r̄J`, `B`-equations `r̄`.
pub fn expected_residual(spec: &TransformationSpec, payload: Option<&PayloadJet>, r: &DymymResidual) -> DymymResidual {
    let id = |x: &E| *x;
    let bar = |x: &E| x.complex_conj();
    match (spec, payload) {
        (TransformationSpec::GlobalUnitary(_) | TransformationSpec::GaugeUnitary(_), Some(p)) => {
            map_residual(r, |x| *x * p.value, |x| p.inv * *x * p.value, id)
        }
        (TransformationSpec::GaugeSymplectic(_), Some(p)) => {
            map_residual(r, |x| p.inv * *x, id, |x| p.inv * *x * p.value)
        }
        (TransformationSpec::DiscreteJ, _) => {
            let j = E::j();
            map_residual(r, |x| x.complex_conj() * j, |x| -j * x.complex_conj() * j, bar)
        }
        _ => map_residual(r, bar, bar, bar),
    }
}

fn residual_difference(a: &DymymResidual, b: &DymymResidual) -> [f64; 5] {
    let diff = |x: &[E], y: &[E]| x.iter().zip(y).map(|(p, q)| p.distance(q)).fold(0.0, f64::max);
    [
        a.dirac.distance(&b.dirac),
        diff(&a.a_curvature, &b.a_curvature),
        diff(&a.a_source, &b.a_source),
        diff(&a.b_curvature, &b.b_curvature),
        diff(&a.b_source, &b.b_source),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceEntry {
    pub name: String,
    /// Largest residual norm before the transformation.
    pub before: f64,
    /// Largest residual norm after the transformation.
    pub after: f64,
    /// Largest `‖r_after - expected(r_before)‖`.
    pub law_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceReport {
    pub kinds: Vec<String>,
    pub equations: Vec<CovarianceEntry>,
    /// Largest pointwise defect of the gauge payloads in their groups.
    pub payload_defect: f64,
}

impl CovarianceReport {
    pub fn max_law_defect(&self) -> f64 {
        self.equations.iter().map(|e| e.law_defect).fold(0.0, f64::max)
    }

    pub fn max_after(&self) -> f64 {
        self.equations.iter().map(|e| e.after).fold(0.0, f64::max)
    }

    pub fn max_before(&self) -> f64 {
        self.equations.iter().map(|e| e.before).fold(0.0, f64::max)
    }
}

/// Applies `specs` in order and compares exact-derivative residuals before
/// and after against the composed transformation laws.
pub fn covariance_check(fs: &FieldSetDymym, specs: &[TransformationSpec], points: &[SpacetimePoint]) -> Result<CovarianceReport> {
    let mut stages = vec![fs.clone()];
    let mut payload_defect = 0.0f64;
    for spec in specs {
        let prev = stages.last().expect("nonempty");
        payload_defect = payload_defect.max(spec.payload_defect(&prev.t, points)?);
        let next = apply(prev, spec)?;
        stages.push(next);
    }
    let last = stages.last().expect("nonempty");
    let rows = Execution::default().try_map(points, |x| {
        let before = dymym_components(fs.m, &fs.source.jet(x)?);
        let after = dymym_components(last.m, &last.source.jet(x)?);
        let mut expected = before.clone();
        for spec in specs {
            let payload = spec.payload(x, 0)?;
            expected = expected_residual(spec, payload.as_ref(), &expected);
        }
        Ok((before.norms(), after.norms(), residual_difference(&after, &expected)))
    })?;
    let equations = DYMYM_EQUATIONS
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let worst = |pick: usize| {
                rows.iter().map(|r| [r.0[k], r.1[k], r.2[k]][pick]).fold(0.0, f64::max)
            };
            CovarianceEntry { name: name.to_string(), before: worst(0), after: worst(1), law_defect: worst(2) }
        })
        .collect();
    Ok(CovarianceReport { kinds: specs.iter().map(|s| s.kind().to_string()).collect(), equations, payload_defect })
}

/// `max_x` distance between the field jets after the gauge unitary by `U₁` then by `U₂` and
/// after the gauge unitary by `U₁U₂`.
pub fn group_action_defect(fs: &FieldSetDymym, u1: &FieldFamily, u2: &FieldFamily, points: &[SpacetimePoint]) -> Result<f64> {
    let step = apply(&apply(fs, &TransformationSpec::GaugeUnitary(u1.clone()))?, &TransformationSpec::GaugeUnitary(u2.clone()))?;
    let once = apply(fs, &TransformationSpec::GaugeUnitary(u1.then(u2)))?;
    let mut worst = 0.0f64;
    for x in points {
        let (a, b) = (step.source.jet(x)?, once.source.jet(x)?);
        worst = worst.max(a.value.zip_with(&b.value, |p, q| *p - *q).max_norm());
        for mu in 0..4 {
            worst = worst.max(a.d[mu].zip_with(&b.d[mu], |p, q| *p - *q).max_norm());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurrentReport {
    /// `max_x ‖∂_μ(iJ^μ) - [A_μ, iJ^μ]‖`
    pub residual: f64,
    pub current_norm: f64,
    /// `φ` vanished at every sampled point, so the law holds as `0 = 0`.
    pub trivial: bool,
}

/// Conservation law of the vector current `iJ^μ = φ†βih^μφ` with exact derivatives.
pub fn check_current_conservation(fs: &FieldSetDymym, points: &[SpacetimePoint]) -> Result<CurrentReport> {
    let mut report = CurrentReport { residual: 0.0, current_norm: 0.0, trivial: true };
    for x in points {
        let jet = fs.source.jet(x)?;
        let v = &jet.value;
        if !v.phi.is_zero() {
            report.trivial = false;
        }
        let beta = E::beta();
        let mut div = E::zero();
        for mu in 0..4 {
            let d = &jet.d[mu];
            let ih = v.h[mu].times_i();
            let current = v.phi.herm_conj() * beta * ih * v.phi;
            let dcurrent = d.phi.herm_conj() * beta * ih * v.phi
                + v.phi.herm_conj() * beta * d.h[mu].times_i() * v.phi
                + v.phi.herm_conj() * beta * ih * d.phi;
            div += dcurrent - commutator(&v.a[mu], &current);
            report.current_norm = report.current_norm.max(current.norm());
        }
        report.residual = report.residual.max(div.norm());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{build_pure_gauge, reduce, sample_points, FieldOverlay, PhiChoice};
    use crate::rng::rng_from_seed;
    use crate::subspaces::{HermitianIdempotent, Space, SpaceSampler};

    fn t3() -> HermitianIdempotent {
        HermitianIdempotent::standard(3).unwrap()
    }

    fn solution(seed: u64) -> FieldSetDymym {
        let sampler = SpaceSampler::new(Space::SpAlgebra).unwrap();
        let fam = FieldFamily::random(&sampler, &mut rng_from_seed(seed), 2, 0.5);
        reduce(&build_pure_gauge(&fam, &t3(), 1.0, PhiChoice::Zero).unwrap())
    }

    fn off_shell(seed: u64) -> FieldSetDymym {
        let overlay = FieldOverlay::random(&mut rng_from_seed(seed + 100), &t3(), 2, 0.5).unwrap();
        solution(seed).with_overlay(overlay)
    }

    fn specs(seed: u64) -> Vec<TransformationSpec> {
        let t = t3();
        let lie = SpaceSampler::new(Space::LieAlgebra(&t)).unwrap();
        let sp = SpaceSampler::new(Space::SpAlgebra).unwrap();
        let mut rng = rng_from_seed(seed);
        let u = crate::algebra::exp_default(&lie.draw_algebra(&mut rng, 0.7)).unwrap();
        // any unitary works for the global kind; take one outside G(t)
        let g = crate::algebra::exp_default(&(CliffordElement::basis(&[1, 2]) * 0.3)).unwrap() * u;
        vec![
            TransformationSpec::GlobalUnitary(g),
            TransformationSpec::GaugeUnitary(FieldFamily::random(&lie, &mut rng, 2, 0.6)),
            TransformationSpec::GaugeSymplectic(FieldFamily::random(&sp, &mut rng, 2, 0.6)),
            TransformationSpec::Conjugation,
            TransformationSpec::DiscreteJ,
        ]
    }

    #[test]
    fn solutions_stay_solutions() {
        let pts = sample_points(1, 6);
        for spec in specs(5) {
            let rep = covariance_check(&solution(2), std::slice::from_ref(&spec), &pts).unwrap();
            assert!(rep.max_before() <= 1e-9 && rep.max_after() <= 1e-9, "{}: {rep:?}", spec.kind());
            assert!(rep.payload_defect <= 1e-9);
        }
    }

    #[test]
    fn laws_hold_off_shell() {
        let pts = sample_points(2, 6);
        for spec in specs(6) {
            let rep = covariance_check(&off_shell(3), std::slice::from_ref(&spec), &pts).unwrap();
            assert!(rep.max_law_defect() <= 1e-9, "{}: {rep:?}", spec.kind());
            assert!(rep.equations.iter().all(|e| e.before > 1e-3), "{}: {rep:?}", spec.kind());
        }
    }

    #[test]
    fn composite_unitary_and_symplectic() {
        let s = specs(7);
        let rep = covariance_check(&off_shell(4), &[s[1].clone(), s[2].clone()], &sample_points(3, 5)).unwrap();
        assert!(rep.max_law_defect() <= 1e-9, "{rep:?}");
        assert_eq!(rep.kinds, ["gauge_unitary", "gauge_symplectic"]);
    }

    #[test]
    fn gauge_group_action() {
        let t = t3();
        let lie = SpaceSampler::new(Space::LieAlgebra(&t)).unwrap();
        let mut rng = rng_from_seed(8);
        let u1 = FieldFamily::random(&lie, &mut rng, 2, 0.5);
        let u2 = FieldFamily::random(&lie, &mut rng, 2, 0.5);
        assert!(group_action_defect(&off_shell(5), &u1, &u2, &sample_points(4, 5)).unwrap() <= 1e-10);
    }

    #[test]
    fn current_conservation_on_zero_spinor_is_trivial() {
        let rep = check_current_conservation(&solution(6), &sample_points(5, 4)).unwrap();
        assert!(rep.trivial);
        assert_eq!(rep.residual, 0.0);
        let off = check_current_conservation(&off_shell(6), &sample_points(5, 4)).unwrap();
        assert!(!off.trivial && off.current_norm > 0.0);
    }
}
