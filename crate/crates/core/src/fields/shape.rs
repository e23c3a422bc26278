use serde::{Deserialize, Serialize};

use super::point::SpacetimePoint;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub powers: [u32; 4],
}

/// `amplitude · sin(k·x + phase)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wave {
    pub amplitude: f64,
    pub wavevector: [f64; 4],
    pub phase: f64,
}

/// Scalar shape function with closed-form partial derivatives of every order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "coeffs", rename_all = "lowercase")]
pub enum Shape {
    Poly(Vec<Monomial>),
    Trig(Vec<Wave>),
}

fn falling_factorial(p: u32, d: u32) -> f64 {
    (0..d).map(|k| (p - k) as f64).product()
}

impl Shape {
    /// Polynomial with a single term.
    pub fn monomial(coeff: f64, powers: [u32; 4]) -> Self {
        Shape::Poly(vec![Monomial { coeff, powers }])
    }

    /// `s(x) = x^μ`.
    pub fn coordinate(mu: usize) -> Self {
        let mut powers = [0; 4];
        powers[mu] = 1;
        Self::monomial(1.0, powers)
    }

    pub fn value(&self, x: &SpacetimePoint) -> f64 {
        self.partial(x, &[])
    }

    /// `∂_{idx[0]} ∂_{idx[1]} … s(x)`.
    pub fn partial(&self, x: &SpacetimePoint, idx: &[usize]) -> f64 {
        match self {
            Shape::Poly(terms) => {
                let mut d = [0u32; 4];
                for &mu in idx {
                    d[mu] += 1;
                }
                terms
                    .iter()
                    .map(|t| {
                        if (0..4).any(|i| d[i] > t.powers[i]) {
                            return 0.0;
                        }
                        (0..4).fold(t.coeff, |acc, i| {
                            acc * falling_factorial(t.powers[i], d[i]) * x.x[i].powi((t.powers[i] - d[i]) as i32)
                        })
                    })
                    .sum()
            }
            Shape::Trig(waves) => waves
                .iter()
                .map(|w| {
                    let arg: f64 = (0..4).map(|i| w.wavevector[i] * x.x[i]).sum::<f64>() + w.phase;
                    let k: f64 = idx.iter().map(|&mu| w.wavevector[mu]).product();
                    // each derivative advances the phase by π/2
                    w.amplitude * k * match idx.len() % 4 {
                        0 => arg.sin(),
                        1 => arg.cos(),
                        2 => -arg.sin(),
                        _ => -arg.cos(),
                    }
                })
                .sum(),
        }
    }

    pub fn gradient(&self, x: &SpacetimePoint) -> [f64; 4] {
        std::array::from_fn(|mu| self.partial(x, &[mu]))
    }

    pub fn hessian(&self, x: &SpacetimePoint) -> [[f64; 4]; 4] {
        std::array::from_fn(|mu| std::array::from_fn(|nu| self.partial(x, &[mu, nu])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        // s = 3 x0² x2 - x1
        let s = Shape::Poly(vec![
            Monomial { coeff: 3.0, powers: [2, 0, 1, 0] },
            Monomial { coeff: -1.0, powers: [0, 1, 0, 0] },
        ]);
        let x = SpacetimePoint::new([0.5, 0.2, -2.0, 7.0]);
        assert!((s.value(&x) - (3.0 * 0.25 * -2.0 - 0.2)).abs() < 1e-15);
        assert_eq!(s.gradient(&x), [3.0 * 2.0 * 0.5 * -2.0, -1.0, 3.0 * 0.25, 0.0]);
        assert_eq!(s.partial(&x, &[0, 0, 2]), 6.0);
        assert_eq!(s.partial(&x, &[0, 0, 0]), 0.0);
        assert_eq!(s.hessian(&x)[0][2], s.hessian(&x)[2][0]);
    }

    #[test]
    fn trig_derivatives_match_finite_differences() {
        let s = Shape::Trig(vec![Wave { amplitude: 0.7, wavevector: [1.0, -2.0, 0.5, 3.0], phase: 0.3 }]);
        let x = SpacetimePoint::new([0.1, 0.4, 0.9, 0.2]);
        let h = 1e-5;
        for mu in 0..4 {
            for nu in 0..4 {
                for rho in 0..4 {
                    let fd = (s.partial(&x.shifted(rho, h), &[mu, nu]) - s.partial(&x.shifted(rho, -h), &[mu, nu])) / (2.0 * h);
                    assert!((fd - s.partial(&x, &[mu, nu, rho])).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let s = Shape::coordinate(1);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"type":"poly","coeffs":[{"coeff":1.0,"powers":[0,1,0,0]}]}"#);
        assert_eq!(serde_json::from_str::<Shape>(&j).unwrap(), s);
    }
}
