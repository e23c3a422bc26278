use crate::algebra::{exp_default, CliffordElement};
use crate::error::Result;
use crate::rng::{rng_from_seed, symmetric, SampleRng};

use super::basis::{subspace_basis, Space, SubspaceBasis};

/// Reusable sampler holding the Lie-algebra basis behind a space.
#[derive(Debug, Clone)]
pub struct SpaceSampler {
    basis: SubspaceBasis,
    exponentiate: bool,
}

impl SpaceSampler {
    /// Accepts `sp_cl`, `Sp_cl`, `L(t)` and `G(t)`; group spaces sample
    /// `exp` of the matching Lie algebra.
    pub fn new(space: Space<'_>) -> Result<Self> {
        let (algebra, exponentiate) = match space {
            Space::SpAlgebra => (Space::SpAlgebra, false),
            Space::SpGroup => (Space::SpAlgebra, true),
            Space::LieAlgebra(t) => (Space::LieAlgebra(t), false),
            Space::GaugeGroup(t) => (Space::LieAlgebra(t), true),
            other => (other, false),
        };
        Ok(SpaceSampler { basis: subspace_basis(algebra)?, exponentiate })
    }

    /// Lie-algebra element with basis coefficients uniform in `[-scale, scale]`.
    pub fn draw_algebra(&self, rng: &mut SampleRng, scale: f64) -> CliffordElement {
        self.basis.basis.iter().map(|b| b.scale_real(symmetric(rng, scale))).sum()
    }

    pub fn draw(&self, rng: &mut SampleRng, scale: f64) -> Result<CliffordElement> {
        let v = self.draw_algebra(rng, scale);
        if self.exponentiate {
            exp_default(&v)
        } else {
            Ok(v)
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim
    }
}

/// Deterministic sample from `space` for the given seed.
pub fn sample(space: Space<'_>, seed: u64, scale: f64) -> Result<CliffordElement> {
    SpaceSampler::new(space)?.draw(&mut rng_from_seed(seed), scale)
}
