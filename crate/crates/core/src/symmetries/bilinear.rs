use num_complex::Complex;

use crate::algebra::{hermitian_spectrum, Clifford, CliffordElement, Real, Spectrum};
use crate::error::{Error, Result};
use crate::subspaces::{in_ideal, HermitianIdempotent, IdealKind, Membership};

/// `J^{μ1…μk}` at one point, with the factor `i` of `iJ` stripped.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm<T: Real = f64> {
    pub k: usize,
    pub indices: Vec<usize>,
    pub value: Clifford<T>,
}

/// Permutations of `0..k` with their signs.
fn signed_permutations(k: usize) -> Vec<(i64, Vec<usize>)> {
    if k == 0 {
        return vec![(1, Vec::new())];
    }
    let mut out = Vec::new();
    for (sign, perm) in signed_permutations(k - 1) {
        // inserting k-1 at position p adds (k-1-p) inversions
        for p in 0..k {
            let mut next = perm.clone();
            next.insert(p, k - 1);
            let s = if (k - 1 - p).is_multiple_of(2) { sign } else { -sign };
            out.push((s, next));
        }
    }
    out
}

/// `h^{[μ1}…h^{μk]}` with weight `1/k!`.
pub fn antisymmetrized_product<T: Real>(h: &[Clifford<T>; 4], indices: &[usize]) -> Clifford<T> {
    let perms = signed_permutations(indices.len());
    let count = perms.len() as i64;
    let sum = perms.into_iter().fold(Clifford::zero(), |acc, (sign, perm)| {
        let word = perm.iter().fold(Clifford::unit(), |w, &j| w * h[indices[j]]);
        acc + word.scale_real(T::from_int(sign))
    });
    sum.scale_real(T::one() / T::from_int(count))
}

/// `i^{k(k-1)/2}`.
fn phase<T: Real>(k: usize) -> Complex<T> {
    let (re, im) = match (k * (k - 1) / 2) % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    Complex::new(T::from_int(re), T::from_int(im))
}

/// `J^{μ1…μk} = i^{k(k-1)/2} φ† β h^{[μ1}…h^{μk]} φ`.
///
/// Repeated indices give zero. Ranks outside `1..=4` are rejected.
pub fn bilinear_form<T: Real>(phi: &Clifford<T>, h: &[Clifford<T>; 4], indices: &[usize]) -> Result<BilinearForm<T>> {
    let k = indices.len();
    if !(1..=4).contains(&k) {
        return Err(Error::FormRankOutOfRange(k));
    }
    if let Some(bad) = indices.iter().find(|&&mu| mu >= 4) {
        return Err(Error::InvalidArgument(format!("spacetime index {bad} out of range")));
    }
    let core = phi.herm_conj() * Clifford::beta() * antisymmetrized_product(h, indices) * *phi;
    Ok(BilinearForm { k, indices: indices.to_vec(), value: core.scale(phase(k)) })
}

impl BilinearForm<f64> {
    /// `‖J† - J‖`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.value.herm_conj().distance(&self.value)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.value)
    }

    /// Membership of `iJ` in `L(t)`.
    pub fn lie_membership(&self, t: &HermitianIdempotent, tol: f64) -> Membership {
        in_ideal(&self.value.times_i(), t, IdealKind::LieAlgebra, tol)
    }

    pub fn i_value(&self) -> CliffordElement {
        self.value.times_i()
    }
}
