use rand::RngExt;
use serde::{Deserialize, Serialize};

use crate::algebra::{CliffordElement, METRIC};
use crate::rng::rng_from_seed;

/// Cartesian Minkowski coordinates `(x⁰, x¹, x², x³)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpacetimePoint {
    pub x: [f64; 4],
}

impl SpacetimePoint {
    pub const ORIGIN: SpacetimePoint = SpacetimePoint { x: [0.0; 4] };

    pub fn new(x: [f64; 4]) -> Self {
        SpacetimePoint { x }
    }

    /// `x + step · ε_μ`.
    pub fn shifted(&self, mu: usize, step: f64) -> Self {
        let mut x = self.x;
        x[mu] += step;
        SpacetimePoint { x }
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().all(|v| v.is_finite())
    }
}

/// The six index pairs `μ < ν` in lexicographic order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `X_μ = η_{μμ} X^μ` (and the same map raises, η being its own inverse).
pub fn lower(v: &[CliffordElement; 4]) -> [CliffordElement; 4] {
    std::array::from_fn(|mu| v[mu] * METRIC.diag(mu))
}

/// `n` seeded points uniform in the cube `[0, 1]⁴`.
pub fn sample_points(seed: u64, n: usize) -> Vec<SpacetimePoint> {
    let mut rng = rng_from_seed(seed);
    (0..n).map(|_| SpacetimePoint { x: std::array::from_fn(|_| rng.random::<f64>()) }).collect()
}
