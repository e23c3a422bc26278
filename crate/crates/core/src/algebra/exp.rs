use super::element::CliffordElement;
use crate::error::{Error, Result};

/// Series truncation threshold on the term norm.
pub const EXP_SERIES_TOL: f64 = 1e-15;
/// Iteration cap on the series.
pub const EXP_MAX_TERMS: usize = 200;

/// Exponential by scaling and squaring of the power series `Σ Uⁿ/n!`.
pub fn exp(u: &CliffordElement, tol: f64) -> Result<CliffordElement> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("exp tolerance must be positive, got {tol}")));
    }
    if !u.is_finite() {
        return Err(Error::InvalidArgument("exp of a non-finite element".into()));
    }
    let norm = u.norm();
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > 0.5 {
        squarings += 1;
    }
    let scaled = u.scale_real(2f64.powi(-(squarings as i32)));

    let mut sum = CliffordElement::unit();
    let mut term = CliffordElement::unit();
    let mut converged = false;
    for n in 1..=EXP_MAX_TERMS {
        term = (term * scaled).scale_real(1.0 / n as f64);
        sum += term;
        if term.norm() < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ExpNonConvergence { iterations: EXP_MAX_TERMS });
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    Ok(sum)
}

/// [`exp`] with [`EXP_SERIES_TOL`].
pub fn exp_default(u: &CliffordElement) -> Result<CliffordElement> {
    exp(u, EXP_SERIES_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::commutator;

    type E = CliffordElement;

    #[test]
    fn exp_zero_is_unit() {
        assert_eq!(exp_default(&E::zero()).unwrap(), E::unit());
    }

    #[test]
    fn exp_of_bivector_is_rotation() {
        for theta in [0.1, 0.7, 2.5, -4.0] {
            let r = exp_default(&(E::basis(&[1, 2]) * theta)).unwrap();
            let expected = E::unit() * theta.cos() + E::basis(&[1, 2]) * theta.sin();
            assert!(r.approx_eq(&expected, 1e-13), "theta = {theta}: {r:?}");
        }
    }

    #[test]
    fn exp_of_boost_generator_is_hyperbolic() {
        // (e01)^2 = +e
        let r = exp_default(&(E::basis(&[0, 1]) * 0.8)).unwrap();
        let expected = E::unit() * 0.8f64.cosh() + E::basis(&[0, 1]) * 0.8f64.sinh();
        assert!(r.approx_eq(&expected, 1e-13));
    }

    #[test]
    fn exp_rejects_bad_tolerance() {
        assert!(exp(&E::unit(), 0.0).is_err());
        assert!(exp(&E::unit(), -1.0).is_err());
    }

    #[test]
    fn exp_of_commuting_sum_factorises() {
        let u = E::basis(&[1, 2]) * 0.4 + E::unit() * 0.3;
        let v = E::basis(&[0, 3]) * -0.6;
        assert!(commutator(&u, &v).norm() < 1e-15);
        let lhs = exp_default(&(u + v)).unwrap();
        let rhs = exp_default(&u).unwrap() * exp_default(&v).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-10));
    }
}
