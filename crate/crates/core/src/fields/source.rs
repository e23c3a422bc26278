use std::fmt;
use std::sync::Arc;

use crate::algebra::{commutator, inverse, CliffordElement};
use crate::error::{Error, Result};
use crate::rng::{random_element, SampleRng};
use crate::subspaces::{HermitianIdempotent, Space, SpaceSampler};

use super::family::{eval_family, ElementField, FieldFamily};
use super::point::{lower, SpacetimePoint, PAIRS};
use super::values::{FieldValues, Jet};

type E = CliffordElement;

/// Closed-form field configuration.
pub trait FieldSource: Send + Sync {
    /// Values and exact first derivatives at `x`.
    fn jet(&self, x: &SpacetimePoint) -> Result<Jet>;

    /// Values only; finite-difference evaluation calls this at shifted points.
    fn values(&self, x: &SpacetimePoint) -> Result<FieldValues> {
        Ok(self.jet(x)?.value)
    }
}

/// Fields of the single-gauge-field system: `φ, h^μ, A_μ, F_{μν}, C_μ` and mass `m`.
#[derive(Clone)]
pub struct FieldSetMdymw {
    pub m: f64,
    pub t: HermitianIdempotent,
    pub source: Arc<dyn FieldSource>,
}

/// Fields of the two-gauge-field system: `φ, h^μ, A_μ, F_{μν}, B_μ, G_{μν}` and mass `m`.
#[derive(Clone)]
pub struct FieldSetDymym {
    pub m: f64,
    pub t: HermitianIdempotent,
    pub source: Arc<dyn FieldSource>,
}

impl fmt::Debug for FieldSetMdymw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSetMdymw").field("m", &self.m).field("t", &self.t.label()).finish_non_exhaustive()
    }
}

impl fmt::Debug for FieldSetDymym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSetDymym").field("m", &self.m).field("t", &self.t.label()).finish_non_exhaustive()
    }
}

impl FieldSetMdymw {
    pub fn with_overlay(&self, overlay: FieldOverlay) -> Self {
        FieldSetMdymw { m: self.m, t: self.t.clone(), source: Arc::new(Overlay::new(self.source.clone(), overlay)) }
    }
}

impl FieldSetDymym {
    pub fn with_overlay(&self, overlay: FieldOverlay) -> Self {
        FieldSetDymym { m: self.m, t: self.t.clone(), source: Arc::new(Overlay::new(self.source.clone(), overlay)) }
    }
}

/// `h^ν = W⁻¹ e^ν W`, `C_μ = -W⁻¹ ∂_μ W`, all other slots zero.
#[derive(Debug, Clone)]
pub struct PureGauge {
    pub family: FieldFamily,
}

impl PureGauge {
    fn evaluate(&self, x: &SpacetimePoint, with_derivatives: bool) -> Result<Jet> {
        let w = eval_family(&self.family, x, if with_derivatives { 2 } else { 1 })?;
        let winv = inverse(&w.value)?;
        let mut value = FieldValues::zero();
        for nu in 0..4 {
            value.h[nu] = winv * E::generator(nu) * w.value;
            value.gauge[nu] = -(winv * w.first[nu]);
        }
        let mut jet = Jet::constant(value);
        if with_derivatives {
            for alpha in 0..4 {
                let dwinv = -(winv * w.first[alpha] * winv);
                let d = &mut jet.d[alpha];
                for nu in 0..4 {
                    d.h[nu] = dwinv * E::generator(nu) * w.value + winv * E::generator(nu) * w.first[alpha];
                    d.gauge[nu] = -(dwinv * w.first[nu] + winv * w.second[alpha][nu]);
                }
            }
        }
        Ok(jet)
    }
}

impl FieldSource for PureGauge {
    fn jet(&self, x: &SpacetimePoint) -> Result<Jet> {
        self.evaluate(x, true)
    }

    fn values(&self, x: &SpacetimePoint) -> Result<FieldValues> {
        Ok(self.evaluate(x, false)?.value)
    }
}

/// Replaces `C_μ` by `B_μ = C_μ - (m/4) i h_μ` and sets `G_{μν} = -(m/4)² [i h_μ, i h_ν]`.
pub struct Reduced {
    pub inner: Arc<dyn FieldSource>,
    pub m: f64,
}

impl Reduced {
    fn map_values(&self, v: &FieldValues) -> FieldValues {
        let k = self.m / 4.0;
        let ih = lower(&v.h).map(|x| x.times_i());
        let mut out = v.clone();
        for mu in 0..4 {
            out.gauge[mu] = v.gauge[mu] - ih[mu] * k;
        }
        out.g = std::array::from_fn(|mu| std::array::from_fn(|nu| commutator(&ih[mu], &ih[nu]) * -(k * k)));
        out
    }

    fn map_derivative(&self, v: &FieldValues, dv: &FieldValues) -> FieldValues {
        let k = self.m / 4.0;
        let ih = lower(&v.h).map(|x| x.times_i());
        let dih = lower(&dv.h).map(|x| x.times_i());
        let mut out = dv.clone();
        for mu in 0..4 {
            out.gauge[mu] = dv.gauge[mu] - dih[mu] * k;
        }
        out.g = std::array::from_fn(|mu| {
            std::array::from_fn(|nu| (commutator(&dih[mu], &ih[nu]) + commutator(&ih[mu], &dih[nu])) * -(k * k))
        });
        out
    }
}

impl FieldSource for Reduced {
    fn jet(&self, x: &SpacetimePoint) -> Result<Jet> {
        let inner = self.inner.jet(x)?;
        Ok(Jet {
            value: self.map_values(&inner.value),
            d: Box::new(std::array::from_fn(|mu| self.map_derivative(&inner.value, &inner.d[mu]))),
        })
    }

    fn values(&self, x: &SpacetimePoint) -> Result<FieldValues> {
        Ok(self.map_values(&self.inner.values(x)?))
    }
}

/// Additive polynomial perturbations of individual slots. `f` and `g` are
/// indexed by [`PAIRS`] and extended antisymmetrically.
#[derive(Debug, Clone, Default)]
pub struct FieldOverlay {
    pub phi: ElementField,
    pub a: [ElementField; 4],
    pub f: [ElementField; 6],
    pub gauge: [ElementField; 4],
    pub g: [ElementField; 6],
}

impl FieldOverlay {
    /// Seeded off-shell perturbation respecting slot memberships:
    /// `φ ∈ I(t)`, `A, F ∈ L(t)`, `B, G ∈ sp(cl(1,3))`.
    pub fn random(rng: &mut SampleRng, t: &HermitianIdempotent, n_terms: usize, scale: f64) -> Result<Self> {
        let lie = SpaceSampler::new(Space::LieAlgebra(t))?;
        let sp = SpaceSampler::new(Space::SpAlgebra)?;
        let phi = ElementField::random(rng, n_terms, |r| random_element(r, scale)).times_right(t.element());
        let a = std::array::from_fn(|_| ElementField::random(rng, n_terms, |r| lie.draw_algebra(r, scale)));
        let f = std::array::from_fn(|_| ElementField::random(rng, n_terms, |r| lie.draw_algebra(r, scale)));
        let gauge = std::array::from_fn(|_| ElementField::random(rng, n_terms, |r| sp.draw_algebra(r, scale)));
        let g = std::array::from_fn(|_| ElementField::random(rng, n_terms, |r| sp.draw_algebra(r, scale)));
        Ok(FieldOverlay { phi, a, f, gauge, g })
    }
}

pub struct Overlay {
    pub base: Arc<dyn FieldSource>,
    pub overlay: FieldOverlay,
}

impl Overlay {
    pub fn new(base: Arc<dyn FieldSource>, overlay: FieldOverlay) -> Self {
        Overlay { base, overlay }
    }

    fn add(&self, v: &mut FieldValues, x: &SpacetimePoint, idx: &[usize]) {
        let o = &self.overlay;
        v.phi += o.phi.partial(x, idx);
        for mu in 0..4 {
            v.a[mu] += o.a[mu].partial(x, idx);
            v.gauge[mu] += o.gauge[mu].partial(x, idx);
        }
        for (p, &(mu, nu)) in PAIRS.iter().enumerate() {
            let df = o.f[p].partial(x, idx);
            v.f[mu][nu] += df;
            v.f[nu][mu] -= df;
            let dg = o.g[p].partial(x, idx);
            v.g[mu][nu] += dg;
            v.g[nu][mu] -= dg;
        }
    }
}

impl FieldSource for Overlay {
    fn jet(&self, x: &SpacetimePoint) -> Result<Jet> {
        let mut jet = self.base.jet(x)?;
        self.add(&mut jet.value, x, &[]);
        for mu in 0..4 {
            self.add(&mut jet.d[mu], x, &[mu]);
        }
        Ok(jet)
    }

    fn values(&self, x: &SpacetimePoint) -> Result<FieldValues> {
        let mut v = self.base.values(x)?;
        self.add(&mut v, x, &[]);
        Ok(v)
    }
}

/// Spinor seeding for [`build_pure_gauge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiChoice {
    #[default]
    Zero,
}

/// Pure-gauge solution of the single-field system: `h^μ = W⁻¹e^μW`,
/// `C_μ = -W⁻¹∂_μW`, `φ = 0`, `A = F = 0`.
pub fn build_pure_gauge(family: &FieldFamily, t: &HermitianIdempotent, m: f64, phi: PhiChoice) -> Result<FieldSetMdymw> {
    let defect = family.sp_defect();
    if defect > 1e-12 {
        return Err(Error::Membership(format!("family generator outside sp(cl(1,3)) by {defect:.3e}")));
    }
    if !m.is_finite() {
        return Err(Error::InvalidArgument(format!("mass must be finite, got {m}")));
    }
    let PhiChoice::Zero = phi;
    Ok(FieldSetMdymw { m, t: t.clone(), source: Arc::new(PureGauge { family: family.clone() }) })
}

/// The substitution `B_μ = C_μ - (m/4) i h_μ`, `G_{μν} = -(m/4)² [i h_μ, i h_ν]`.
pub fn reduce(fs: &FieldSetMdymw) -> FieldSetDymym {
    FieldSetDymym { m: fs.m, t: fs.t.clone(), source: Arc::new(Reduced { inner: fs.source.clone(), m: fs.m }) }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::shape::Shape;
    use crate::subspaces::in_sp_cl;

    fn t2() -> HermitianIdempotent {
        HermitianIdempotent::standard(2).unwrap()
    }

    #[test]
    fn empty_family_gives_constant_generators() {
        let fs = build_pure_gauge(&FieldFamily::default(), &t2(), 1.0, PhiChoice::Zero).unwrap();
        let jet = fs.source.jet(&SpacetimePoint::new([0.1, 0.2, 0.3, 0.4])).unwrap();
        for mu in 0..4 {
            assert_eq!(jet.value.h[mu], E::generator(mu));
            assert!(jet.value.gauge[mu].is_zero());
        }
        assert!(jet.value.phi.is_zero());
    }

    #[test]
    fn rejects_generators_outside_sp() {
        let fam = FieldFamily::single(E::generator(1), Shape::coordinate(0));
        assert!(matches!(build_pure_gauge(&fam, &t2(), 1.0, PhiChoice::Zero), Err(Error::Membership(_))));
    }

    #[test]
    fn reduction_of_constant_generators() {
        let m = 1.3;
        let fs = reduce(&build_pure_gauge(&FieldFamily::default(), &t2(), m, PhiChoice::Zero).unwrap());
        let v = fs.source.values(&SpacetimePoint::ORIGIN).unwrap();
        assert!(v.gauge[0].approx_eq(&(E::generator(0).times_i() * (-m / 4.0)), 1e-15));
        // G_01 = -(m²/8) e01
        assert!(v.g[0][1].approx_eq(&(E::basis(&[0, 1]) * (-m * m / 8.0)), 1e-15));
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(v.g[mu][nu].approx_eq(&-v.g[nu][mu], 0.0));
                assert!(in_sp_cl(&v.g[mu][nu], 1e-15).holds);
            }
            assert!(in_sp_cl(&v.gauge[mu], 1e-15).holds);
        }
    }

    #[test]
    fn zero_mass_reduction_is_identity_on_gauge() {
        let fam = FieldFamily::single(E::basis(&[0, 2]) * 0.4, Shape::coordinate(3));
        let fs = build_pure_gauge(&fam, &t2(), 0.0, PhiChoice::Zero).unwrap();
        let red = reduce(&fs);
        let x = SpacetimePoint::new([0.5, 0.5, 0.5, 0.5]);
        let (a, b) = (fs.source.jet(&x).unwrap(), red.source.jet(&x).unwrap());
        assert_eq!(a.value.gauge, b.value.gauge);
        assert!(b.value.g.iter().flatten().all(E::is_zero));
    }
}
