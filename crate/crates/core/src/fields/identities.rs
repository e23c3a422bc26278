use serde::Serialize;

use crate::algebra::{anticommutator, commutator, CliffordElement, METRIC};
use crate::error::Result;
use crate::rng::SampleRng;

use super::deriv::DerivMode;
use super::family::ElementField;
use super::point::{lower, SpacetimePoint};
use super::residual::Evaluator;
use super::source::FieldSetDymym;

type E = CliffordElement;

fn eta(mu: usize) -> f64 {
    METRIC.diag(mu)
}

/// Residual norms of the orthonormal-frame identities at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HIdentityReport {
    /// `max_{μν} ‖h^μh^ν + h^νh^μ - 2η^{μν}e‖`
    pub anticommutation: f64,
    /// `‖¼ h^μh_μ - e‖`
    pub trace: f64,
    /// `max_ν ‖h^μh^νh_μ + 2h^ν‖`
    pub sandwich_left: f64,
    /// `max_ν ‖h_μh^νh^μ + 2h^ν‖`
    pub sandwich_right: f64,
}

impl HIdentityReport {
    pub fn max(&self) -> f64 {
        self.anticommutation.max(self.trace).max(self.sandwich_left).max(self.sandwich_right)
    }
}

pub fn check_h_identities(h: &[E; 4]) -> HIdentityReport {
    let hl = lower(h);
    let mut anticommutation = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let target = E::unit() * (2.0 * f64::from(METRIC.component(mu, nu)));
            anticommutation = anticommutation.max((anticommutator(&h[mu], &h[nu]) - target).norm());
        }
    }
    let trace = ((0..4).map(|mu| h[mu] * hl[mu]).sum::<E>() * 0.25 - E::unit()).norm();
    let mut left = 0.0f64;
    let mut right = 0.0f64;
    for nu in 0..4 {
        let l: E = (0..4).map(|mu| h[mu] * h[nu] * hl[mu]).sum();
        let r: E = (0..4).map(|mu| hl[mu] * h[nu] * h[mu]).sum();
        left = left.max((l + h[nu] * 2.0).norm());
        right = right.max((r + h[nu] * 2.0).norm());
    }
    HIdentityReport { anticommutation, trace, sandwich_left: left, sandwich_right: right }
}

/// Worst residuals of the transport and curvature identities of the
/// reduced gauge field and of the conservation law `∂_μh^μ - [B_μ, h^μ] = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HbReport {
    pub transport: f64,
    pub curvature: f64,
    pub conservation: f64,
}

impl HbReport {
    pub fn max(&self) -> f64 {
        self.transport.max(self.curvature).max(self.conservation)
    }
}

pub fn check_hb_identities(fs: &FieldSetDymym, points: &[SpacetimePoint], deriv: DerivMode) -> Result<HbReport> {
    let k = fs.m / 4.0;
    let eval = Evaluator::new(deriv);
    let rows = eval.exec.try_map(points, |x| {
        let jet = eval.jet(fs.source.as_ref(), x)?;
        let v = &jet.value;
        let b = &v.gauge;
        let ih = v.h.map(|u| u.times_i());
        let ihl = lower(&ih);
        let mut transport = 0.0f64;
        let mut curvature = 0.0f64;
        let mut conservation = E::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                let lhs = jet.d[mu].h[nu].times_i() - commutator(&b[mu], &ih[nu]);
                transport = transport.max((lhs - commutator(&ihl[mu], &ih[nu]) * k).norm());
                let curv = jet.d[mu].gauge[nu] - jet.d[nu].gauge[mu] - commutator(&b[mu], &b[nu]);
                curvature = curvature.max((curv + commutator(&ihl[mu], &ihl[nu]) * (k * k)).norm());
            }
            conservation += jet.d[mu].h[mu] - commutator(&b[mu], &v.h[mu]);
        }
        Ok([transport, curvature, conservation.norm()])
    })?;
    let worst = |i: usize| rows.iter().map(|r: &[f64; 3]| r[i]).fold(0.0, f64::max);
    Ok(HbReport { transport: worst(0), curvature: worst(1), conservation: worst(2) })
}

/// Gauge potential `A_μ` (lower index) given in closed form to any derivative order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PotentialFamily {
    pub components: [ElementField; 4],
}

impl PotentialFamily {
    pub fn random(rng: &mut SampleRng, n_terms: usize, mut draw: impl FnMut(&mut SampleRng) -> E) -> Self {
        PotentialFamily { components: std::array::from_fn(|_| ElementField::random(rng, n_terms, &mut draw)) }
    }

    fn partial(&self, mu: usize, x: &SpacetimePoint, idx: &[usize]) -> E {
        self.components[mu].partial(x, idx)
    }

    /// `∂_idx [A_μ, A_ν]` by the Leibniz rule.
    fn commutator_partial(&self, mu: usize, nu: usize, x: &SpacetimePoint, idx: &[usize]) -> E {
        let n = idx.len();
        (0..1usize << n)
            .map(|mask| {
                let (left, right): (Vec<usize>, Vec<usize>) =
                    (0..n).partition(|&i| mask & (1 << i) != 0);
                let pick = |sel: Vec<usize>| sel.into_iter().map(|i| idx[i]).collect::<Vec<_>>();
                commutator(&self.partial(mu, x, &pick(left)), &self.partial(nu, x, &pick(right)))
            })
            .sum()
    }

    /// `∂_idx F_{μν}` with `F_{μν} = ∂_μA_ν - ∂_νA_μ - [A_μ, A_ν]`.
    pub fn curvature_partial(&self, mu: usize, nu: usize, x: &SpacetimePoint, idx: &[usize]) -> E {
        let with = |extra: usize| {
            let mut v = idx.to_vec();
            v.push(extra);
            v
        };
        self.partial(nu, x, &with(mu)) - self.partial(mu, x, &with(nu)) - self.commutator_partial(mu, nu, x, idx)
    }

    /// `i𝒥^ν = ∂_μF^{μν} - [A_μ, F^{μν}]`.
    pub fn current(&self, x: &SpacetimePoint) -> [E; 4] {
        std::array::from_fn(|nu| {
            (0..4)
                .map(|mu| {
                    let f = self.curvature_partial(mu, nu, x, &[]);
                    (self.curvature_partial(mu, nu, x, &[mu]) - commutator(&self.partial(mu, x, &[]), &f))
                        * (eta(mu) * eta(nu))
                })
                .sum()
        })
    }

    /// `∂_ν(i𝒥^ν) - [A_ν, i𝒥^ν]`.
    pub fn current_divergence(&self, x: &SpacetimePoint) -> E {
        let current = self.current(x);
        let mut total = E::zero();
        for nu in 0..4 {
            for mu in 0..4 {
                let s = eta(mu) * eta(nu);
                let f = self.curvature_partial(mu, nu, x, &[]);
                let df = self.curvature_partial(mu, nu, x, &[nu]);
                let ddf = self.curvature_partial(mu, nu, x, &[mu, nu]);
                let a = self.partial(mu, x, &[]);
                let da = self.partial(mu, x, &[nu]);
                total += (ddf - commutator(&da, &f) - commutator(&a, &df)) * s;
            }
            total -= commutator(&self.partial(nu, x, &[]), &current[nu]);
        }
        total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BianchiReport {
    /// `max_x ‖∂_ν(i𝒥^ν) - [A_ν, i𝒥^ν]‖`
    pub residual: f64,
    /// `max_{x,ν} ‖i𝒥^ν‖`, to certify the current is not identically zero.
    pub current_norm: f64,
    pub at: Option<SpacetimePoint>,
}

pub fn bianchi_current_check(pot: &PotentialFamily, points: &[SpacetimePoint]) -> BianchiReport {
    let mut report = BianchiReport { residual: 0.0, current_norm: 0.0, at: None };
    for x in points {
        let r = pot.current_divergence(x).norm();
        if report.at.is_none() || r > report.residual {
            report.residual = r;
            report.at = Some(*x);
        }
        for j in pot.current(x) {
            report.current_norm = report.current_norm.max(j.norm());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::inverse;
    use crate::fields::deriv::fd_derivative;
    use crate::fields::family::FieldFamily;
    use crate::fields::point::sample_points;
    use crate::fields::source::{build_pure_gauge, reduce, PhiChoice};
    use crate::rng::{random_element, rng_from_seed};
    use crate::subspaces::{HermitianIdempotent, Space, SpaceSampler};

    fn standard() -> [E; 4] {
        std::array::from_fn(E::generator)
    }

    #[test]
    fn standard_generators_are_exact() {
        assert_eq!(check_h_identities(&standard()).max(), 0.0);
    }

    #[test]
    fn scaled_frame_is_detected() {
        let mut h = standard();
        h[0] = h[0] * 2.0;
        assert!((check_h_identities(&h).anticommutation - 6.0).abs() < 1e-15);
    }

    #[test]
    fn conjugated_frame_satisfies_identities() {
        let sampler = SpaceSampler::new(Space::SpGroup).unwrap();
        let mut rng = rng_from_seed(17);
        for _ in 0..10 {
            let w = sampler.draw(&mut rng, 0.7).unwrap();
            let wi = inverse(&w).unwrap();
            let h = std::array::from_fn(|mu| wi * E::generator(mu) * w);
            assert!(check_h_identities(&h).max() <= 1e-10);
        }
    }

    #[test]
    fn hb_identities_on_reduced_sets() {
        let sampler = SpaceSampler::new(Space::SpAlgebra).unwrap();
        let fam = FieldFamily::random(&sampler, &mut rng_from_seed(2), 3, 0.5);
        let t = HermitianIdempotent::standard(3).unwrap();
        for m in [0.0, 1.0, 2.0] {
            let fs = reduce(&build_pure_gauge(&fam, &t, m, PhiChoice::Zero).unwrap());
            let rep = check_hb_identities(&fs, &sample_points(5, 8), DerivMode::Exact).unwrap();
            assert!(rep.max() <= 1e-9, "m={m}: {rep:?}");
        }
    }

    #[test]
    fn constant_frame_transport_is_pure_commutator() {
        let fs = reduce(&build_pure_gauge(&FieldFamily::default(), &HermitianIdempotent::standard(1).unwrap(), 1.5, PhiChoice::Zero).unwrap());
        let rep = check_hb_identities(&fs, &[SpacetimePoint::ORIGIN], DerivMode::Exact).unwrap();
        assert_eq!(rep.transport, 0.0);
    }

    #[test]
    fn zero_and_constant_potentials() {
        let pts = sample_points(3, 4);
        assert_eq!(bianchi_current_check(&PotentialFamily::default(), &pts).residual, 0.0);
        let mut rng = rng_from_seed(8);
        let pot = PotentialFamily {
            components: std::array::from_fn(|_| ElementField::constant(random_element(&mut rng, 1.0))),
        };
        let rep = bianchi_current_check(&pot, &pts);
        assert!(rep.residual <= 1e-12, "{rep:?}");
        assert!(rep.current_norm > 1e-3);
    }

    #[test]
    fn polynomial_potentials() {
        let mut rng = rng_from_seed(9);
        let pot = PotentialFamily::random(&mut rng, 3, |r| random_element(r, 1.0));
        let rep = bianchi_current_check(&pot, &sample_points(4, 10));
        assert!(rep.residual <= 1e-8, "{rep:?}");
        assert!(rep.current_norm > 1e-3);
    }

    #[test]
    fn curvature_derivative_matches_finite_differences() {
        let mut rng = rng_from_seed(10);
        let pot = PotentialFamily::random(&mut rng, 2, |r| random_element(r, 1.0));
        let x = SpacetimePoint::new([0.3, 0.6, 0.2, 0.8]);
        let exact = pot.curvature_partial(1, 3, &x, &[2]);
        let fd = fd_derivative(|p| Ok(pot.curvature_partial(1, 3, p, &[])), &x, 2, 1e-3).unwrap();
        assert!(exact.approx_eq(&fd, 1e-8));
    }
}
