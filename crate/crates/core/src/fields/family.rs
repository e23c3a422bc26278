use serde::{Deserialize, Serialize};

use crate::algebra::{exp_default, CliffordElement};
use crate::error::{Error, Result};
use crate::rng::{symmetric, SampleRng};
use crate::subspaces::{in_sp_cl, SpaceSampler};

use super::point::SpacetimePoint;
use super::shape::{Monomial, Shape, Wave};

/// A constant generator paired with a scalar shape function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub generator: CliffordElement,
    pub shape: Shape,
}

/// Group-valued field `W(x) = Π_j exp(s_j(x) v_j)` (ordered product).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FieldFamily {
    pub factors: Vec<Factor>,
}

/// `W`, `∂_μ W`, `∂_μ ∂_ν W` at a point. Entries above the requested order are zero.
#[derive(Debug, Clone)]
pub struct FamilyJet {
    pub value: CliffordElement,
    pub first: [CliffordElement; 4],
    pub second: [[CliffordElement; 4]; 4],
}

impl FamilyJet {
    fn unit() -> Self {
        FamilyJet {
            value: CliffordElement::unit(),
            first: [CliffordElement::zero(); 4],
            second: [[CliffordElement::zero(); 4]; 4],
        }
    }

    /// Product rule: `(P, ∂P, ∂∂P) · (E, ∂E, ∂∂E)`.
    fn then(&self, e: &FamilyJet, order: usize) -> FamilyJet {
        let mut out = FamilyJet::unit();
        out.value = self.value * e.value;
        if order >= 1 {
            for mu in 0..4 {
                out.first[mu] = self.first[mu] * e.value + self.value * e.first[mu];
            }
        }
        if order >= 2 {
            for mu in 0..4 {
                for nu in 0..4 {
                    out.second[mu][nu] = self.second[mu][nu] * e.value
                        + self.first[mu] * e.first[nu]
                        + self.first[nu] * e.first[mu]
                        + self.value * e.second[mu][nu];
                }
            }
        }
        out
    }
}

fn random_shape(rng: &mut SampleRng, trig: bool) -> Shape {
    if trig {
        Shape::Trig(vec![Wave {
            amplitude: symmetric(rng, 1.0),
            wavevector: std::array::from_fn(|_| symmetric(rng, 2.0)),
            phase: symmetric(rng, std::f64::consts::PI),
        }])
    } else {
        // constant, linear and a couple of quadratic terms
        let mut terms = vec![Monomial { coeff: symmetric(rng, 0.5), powers: [0; 4] }];
        for mu in 0..4 {
            let mut p = [0; 4];
            p[mu] = 1;
            terms.push(Monomial { coeff: symmetric(rng, 1.0), powers: p });
        }
        for _ in 0..2 {
            let mut p = [0; 4];
            p[rng_index(rng)] += 1;
            p[rng_index(rng)] += 1;
            terms.push(Monomial { coeff: symmetric(rng, 0.5), powers: p });
        }
        Shape::Poly(terms)
    }
}

fn rng_index(rng: &mut SampleRng) -> usize {
    use rand::RngExt;
    rng.random_range(0..4)
}

impl FieldFamily {
    pub fn new(factors: Vec<Factor>) -> Self {
        FieldFamily { factors }
    }

    pub fn single(generator: CliffordElement, shape: Shape) -> Self {
        FieldFamily { factors: vec![Factor { generator, shape }] }
    }

    /// Seeded family with `n_factors` generators drawn from `sampler`,
    /// alternating polynomial and trigonometric shapes.
    pub fn random(sampler: &SpaceSampler, rng: &mut SampleRng, n_factors: usize, scale: f64) -> Self {
        let factors = (0..n_factors)
            .map(|j| Factor { generator: sampler.draw_algebra(rng, scale), shape: random_shape(rng, j % 2 == 1) })
            .collect();
        FieldFamily { factors }
    }

    /// Largest distance of a generator from `sp(cl(1,3))`.
    pub fn sp_defect(&self) -> f64 {
        self.factors.iter().map(|f| in_sp_cl(&f.generator, f64::INFINITY).residual).fold(0.0, f64::max)
    }

    /// Pointwise product `W₁(x) W₂(x)`.
    pub fn then(&self, other: &FieldFamily) -> FieldFamily {
        FieldFamily { factors: self.factors.iter().chain(other.factors.iter()).cloned().collect() }
    }
}

/// Evaluates `W` and its derivatives up to `order` (0, 1 or 2) exactly.
///
/// For one factor `E = exp(s v)`: `∂_μ E = (∂_μ s) v E` and
/// `∂_μ∂_ν E = (∂_μ∂_ν s) v E + (∂_μ s)(∂_ν s) v² E`, since `v` commutes with `E`.
pub fn eval_family(family: &FieldFamily, x: &SpacetimePoint, order: usize) -> Result<FamilyJet> {
    if order > 2 {
        return Err(Error::InvalidArgument(format!("family derivative order {order} > 2")));
    }
    let mut acc = FamilyJet::unit();
    for factor in &family.factors {
        let v = factor.generator;
        let e = exp_default(&v.scale_real(factor.shape.value(x)))?;
        let mut jet = FamilyJet::unit();
        jet.value = e;
        if order >= 1 {
            let grad = factor.shape.gradient(x);
            let ve = v * e;
            for mu in 0..4 {
                jet.first[mu] = ve * grad[mu];
            }
            if order >= 2 {
                let hess = factor.shape.hessian(x);
                let vve = v * ve;
                for mu in 0..4 {
                    for nu in 0..4 {
                        jet.second[mu][nu] = ve * hess[mu][nu] + vve * (grad[mu] * grad[nu]);
                    }
                }
            }
        }
        acc = acc.then(&jet, order);
    }
    Ok(acc)
}

/// Element-valued field `Σ_j s_j(x) g_j` with derivatives of every order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ElementField {
    pub terms: Vec<Factor>,
}

impl ElementField {
    pub fn zero() -> Self {
        ElementField { terms: Vec::new() }
    }

    pub fn constant(u: CliffordElement) -> Self {
        ElementField { terms: vec![Factor { generator: u, shape: Shape::monomial(1.0, [0; 4]) }] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Seeded polynomial field with generators from `draw`, at most quadratic.
    pub fn random(rng: &mut SampleRng, n_terms: usize, mut draw: impl FnMut(&mut SampleRng) -> CliffordElement) -> Self {
        let terms = (0..n_terms)
            .map(|_| {
                let generator = draw(rng);
                Factor { generator, shape: random_shape(rng, false) }
            })
            .collect();
        ElementField { terms }
    }

    pub fn value(&self, x: &SpacetimePoint) -> CliffordElement {
        self.partial(x, &[])
    }

    pub fn partial(&self, x: &SpacetimePoint, idx: &[usize]) -> CliffordElement {
        self.terms.iter().map(|t| t.generator * t.shape.partial(x, idx)).sum()
    }

    /// Right-multiplies every generator by `u`.
    pub fn times_right(&self, u: &CliffordElement) -> Self {
        ElementField {
            terms: self.terms.iter().map(|t| Factor { generator: t.generator * *u, shape: t.shape.clone() }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::deriv::fd_derivative;
    use crate::rng::rng_from_seed;
    use crate::subspaces::{in_sp_group, Space};

    type E = CliffordElement;

    #[test]
    fn empty_family_is_unit() {
        let jet = eval_family(&FieldFamily::default(), &SpacetimePoint::ORIGIN, 2).unwrap();
        assert_eq!(jet.value, E::unit());
        assert!(jet.first.iter().all(E::is_zero));
    }

    #[test]
    fn one_parameter_subgroup() {
        let v = E::basis(&[1, 2]) * 0.8;
        let fam = FieldFamily::single(v, Shape::coordinate(0));
        let x = SpacetimePoint::new([0.3, 0.1, 0.2, 0.9]);
        let jet = eval_family(&fam, &x, 2).unwrap();
        assert!(jet.first[0].approx_eq(&(v * jet.value), 1e-14));
        assert!(jet.first[1].is_zero());
        assert!(jet.second[0][0].approx_eq(&(v * v * jet.value), 1e-14));
    }

    #[test]
    fn two_factor_derivatives_match_central_differences() {
        let sampler = SpaceSampler::new(Space::SpAlgebra).unwrap();
        let fam = FieldFamily::random(&sampler, &mut rng_from_seed(4), 2, 0.7);
        let x = SpacetimePoint::new([0.4, 0.6, 0.1, 0.8]);
        let jet = eval_family(&fam, &x, 2).unwrap();
        for mu in 0..4 {
            let fd = fd_derivative(|p| Ok(eval_family(&fam, p, 0)?.value), &x, mu, 1e-4).unwrap();
            assert!(fd.approx_eq(&jet.first[mu], 1e-7), "mu = {mu}: {}", fd.distance(&jet.first[mu]));
            for nu in 0..4 {
                let fd2 = fd_derivative(|p| Ok(eval_family(&fam, p, 1)?.first[nu]), &x, mu, 1e-4).unwrap();
                assert!(fd2.approx_eq(&jet.second[mu][nu], 1e-7));
                assert!(jet.second[mu][nu].approx_eq(&jet.second[nu][mu], 1e-12));
            }
        }
        // explicit product-rule formula for two factors
        let (f1, f2) = (&fam.factors[0], &fam.factors[1]);
        let e1 = exp_default(&(f1.generator * f1.shape.value(&x))).unwrap();
        let e2 = exp_default(&(f2.generator * f2.shape.value(&x))).unwrap();
        let manual = f1.generator * e1 * e2 * f1.shape.gradient(&x)[2] + e1 * f2.generator * e2 * f2.shape.gradient(&x)[2];
        assert!(manual.approx_eq(&jet.first[2], 1e-12));
        assert!(in_sp_group(&jet.value, 1e-10).holds);
    }

    #[test]
    fn family_json_layout() {
        let fam = FieldFamily::single(E::basis(&[1, 2]), Shape::coordinate(0));
        let j = serde_json::to_string(&fam).unwrap();
        assert_eq!(
            j,
            r#"{"factors":[{"generator":{"e12":[1.0,0.0]},"shape":{"type":"poly","coeffs":[{"coeff":1.0,"powers":[1,0,0,0]}]}}]}"#
        );
        assert_eq!(serde_json::from_str::<FieldFamily>(&j).unwrap(), fam);
    }
}
