use crate::algebra::{BladeIndex, CliffordElement};

use super::idempotent::HermitianIdempotent;

/// Default tolerance for group and algebra membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub holds: bool,
    pub residual: f64,
}

impl Membership {
    fn from_residual(residual: f64, tol: f64) -> Self {
        Membership { holds: residual <= tol, residual }
    }
}

/// Which space generated by `t` to test against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealKind {
    /// `I(t) = {U : U = U t}`
    LeftIdeal,
    /// `K(t) = {U ∈ I(t) : U = t U}`
    TwoSidedIdeal,
    /// `L(t) = {U ∈ K(t) : U† = -U}`
    LieAlgebra,
    /// `G(t) = {U : U†U = e, U - e ∈ K(t)}`
    GaugeGroup,
}

fn sum_sq(it: impl Iterator<Item = f64>) -> f64 {
    it.map(|x| x * x).sum::<f64>()
}

/// Norm of everything outside `i cl₁ ⊕ cl₂` (real-coefficient sense).
pub(crate) fn sp_algebra_defect(u: &CliffordElement) -> f64 {
    sum_sq(BladeIndex::all().flat_map(|b| {
        let c = u.coeff(b);
        match b.grade() {
            1 => [c.re, 0.0],
            2 => [c.im, 0.0],
            _ => [c.re, c.im],
        }
    }))
    .sqrt()
}

/// Norm of the components violating "even grades real, odd grades imaginary".
pub(crate) fn parity_defect(v: &CliffordElement) -> f64 {
    sum_sq(BladeIndex::all().map(|b| {
        let c = v.coeff(b);
        if b.grade() % 2 == 0 {
            c.im
        } else {
            c.re
        }
    }))
    .sqrt()
}

/// Membership in `sp(cl(1,3)) = i cl^R_1 ⊕ cl^R_2`.
pub fn in_sp_cl(u: &CliffordElement, tol: f64) -> Membership {
    Membership::from_residual(sp_algebra_defect(u), tol)
}

/// Membership in `Sp(cl(1,3))`: parity condition and `V*V = e`.
pub fn in_sp_group(v: &CliffordElement, tol: f64) -> Membership {
    let group = (v.pseudo_conj() * *v).distance(&CliffordElement::unit());
    Membership::from_residual(parity_defect(v).max(group), tol)
}

fn two_sided_defect(u: &CliffordElement, t: &CliffordElement) -> f64 {
    u.distance(&(*u * *t)).max(u.distance(&(*t * *u)))
}

pub fn in_ideal(u: &CliffordElement, t: &HermitianIdempotent, which: IdealKind, tol: f64) -> Membership {
    let t = t.element();
    let residual = match which {
        IdealKind::LeftIdeal => u.distance(&(*u * *t)),
        IdealKind::TwoSidedIdeal => two_sided_defect(u, t),
        IdealKind::LieAlgebra => two_sided_defect(u, t).max((u.herm_conj() + *u).norm()),
        IdealKind::GaugeGroup => {
            let unitary = (u.herm_conj() * *u).distance(&CliffordElement::unit());
            unitary.max(two_sided_defect(&(*u - CliffordElement::unit()), t))
        }
    };
    Membership::from_residual(residual, tol)
}
