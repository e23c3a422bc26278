use crate::algebra::CliffordElement;
use crate::error::{Error, Result};
use crate::linalg::{null_space, orthonormalize, RealMatrix};

use super::idempotent::HermitianIdempotent;
use super::membership::sp_algebra_defect;

/// Pivot threshold for basis extraction.
pub const PIVOT_TOL: f64 = 1e-10;

/// Named subsets of Cl(1,3). Group spaces are accepted by the samplers only.
#[derive(Debug, Clone, Copy)]
pub enum Space<'a> {
    SpAlgebra,
    SpGroup,
    LeftIdeal(&'a HermitianIdempotent),
    TwoSidedIdeal(&'a HermitianIdempotent),
    LieAlgebra(&'a HermitianIdempotent),
    GaugeGroup(&'a HermitianIdempotent),
}

impl Space<'_> {
    pub fn name(&self) -> String {
        let label = |t: &HermitianIdempotent| t.label().unwrap_or("t").to_string();
        match self {
            Space::SpAlgebra => "sp_cl".into(),
            Space::SpGroup => "Sp_cl".into(),
            Space::LeftIdeal(t) => format!("I({})", label(t)),
            Space::TwoSidedIdeal(t) => format!("K({})", label(t)),
            Space::LieAlgebra(t) => format!("L({})", label(t)),
            Space::GaugeGroup(t) => format!("G({})", label(t)),
        }
    }
}

/// Orthonormal basis (in the 32 real coordinates) of a real-linear subspace.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub basis: Vec<CliffordElement>,
    pub dim: usize,
}

impl SubspaceBasis {
    /// Distance from `u` to its orthogonal projection onto the span.
    pub fn projection_defect(&self, u: &CliffordElement) -> f64 {
        let x = u.to_real_coords();
        let mut p = CliffordElement::zero();
        for b in &self.basis {
            let y = b.to_real_coords();
            let d: f64 = x.iter().zip(y.iter()).map(|(a, b)| a * b).sum();
            p += b.scale_real(d);
        }
        u.distance(&p)
    }
}

fn push_coords(out: &mut Vec<f64>, u: &CliffordElement) {
    out.extend_from_slice(&u.to_real_coords());
}

/// Real-linear map whose kernel is the requested space.
fn constraint_image(space: Space<'_>, u: &CliffordElement) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(96);
    match space {
        Space::SpAlgebra => {
            // encode the forbidden components coordinate by coordinate
            let mut forbidden = CliffordElement::zero();
            for b in crate::algebra::BladeIndex::all() {
                let c = u.coeff(b);
                let kept = match b.grade() {
                    1 => num_complex::Complex64::new(c.re, 0.0),
                    2 => num_complex::Complex64::new(0.0, c.im),
                    _ => c,
                };
                forbidden.set_coeff(b, kept);
            }
            debug_assert!((forbidden.norm() - sp_algebra_defect(u)).abs() < 1e-12);
            push_coords(&mut out, &forbidden);
        }
        Space::LeftIdeal(t) => push_coords(&mut out, &(*u - *u * *t.element())),
        Space::TwoSidedIdeal(t) => {
            push_coords(&mut out, &(*u - *u * *t.element()));
            push_coords(&mut out, &(*u - *t.element() * *u));
        }
        Space::LieAlgebra(t) => {
            push_coords(&mut out, &(*u - *u * *t.element()));
            push_coords(&mut out, &(*u - *t.element() * *u));
            push_coords(&mut out, &(u.herm_conj() + *u));
        }
        Space::SpGroup | Space::GaugeGroup(_) => {
            return Err(Error::InvalidArgument(format!("{} is not a linear space", space.name())));
        }
    }
    Ok(out)
}

/// Basis by row reduction of the constraint system over ℝ³².
pub fn subspace_basis(space: Space<'_>) -> Result<SubspaceBasis> {
    let columns = (0..32)
        .map(|k| {
            let mut x = [0.0; 32];
            x[k] = 1.0;
            constraint_image(space, &CliffordElement::from_real_coords(&x))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = RealMatrix::from_columns(&columns);
    let kernel = orthonormalize(&null_space(&m, PIVOT_TOL), PIVOT_TOL);
    let basis: Vec<CliffordElement> = kernel.iter().map(|x| CliffordElement::from_real_coords(x)).collect();
    Ok(SubspaceBasis { dim: basis.len(), basis })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gamma_rep, rank};
    use crate::subspaces::{in_ideal, in_sp_cl, IdealKind};

    #[test]
    fn sp_algebra_has_dimension_ten() {
        let b = subspace_basis(Space::SpAlgebra).unwrap();
        assert_eq!(b.dim, 10);
        for v in &b.basis {
            assert!(in_sp_cl(v, 1e-12).holds);
        }
    }

    #[test]
    fn lie_algebra_dimension_is_rank_squared() {
        for n in 1..=4 {
            let t = HermitianIdempotent::standard(n).unwrap();
            let r = rank(&gamma_rep(t.element()), 1e-10);
            let l = subspace_basis(Space::LieAlgebra(&t)).unwrap();
            assert_eq!(l.dim, r * r, "L(t{n})");
            for u in &l.basis {
                assert!(in_ideal(u, &t, IdealKind::LieAlgebra, 1e-12).holds);
            }
            // I(t) ≅ 4×r complex matrices, K(t) ≅ r×r complex matrices
            assert_eq!(subspace_basis(Space::LeftIdeal(&t)).unwrap().dim, 8 * r);
            assert_eq!(subspace_basis(Space::TwoSidedIdeal(&t)).unwrap().dim, 2 * r * r);
        }
    }

    #[test]
    fn group_spaces_have_no_linear_basis() {
        assert!(subspace_basis(Space::SpGroup).is_err());
    }

    #[test]
    fn projection_defect_detects_outsiders() {
        let b = subspace_basis(Space::SpAlgebra).unwrap();
        assert!(b.projection_defect(&CliffordElement::basis(&[0, 2])) < 1e-12);
        assert!((b.projection_defect(&CliffordElement::generator(1)) - 1.0).abs() < 1e-12);
    }
}
