use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::blade::BladeIndex;
use super::element::{Clifford, CliffordElement};
use super::scalar::Real;
use crate::error::{Error, Result};

/// Condition-number cap above which [`inverse`] reports a singular element.
pub const CONDITION_CAP: f64 = 1e12;

/// 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4<T: Real> {
    pub m: [[Complex<T>; 4]; 4],
}

pub type Matrix4C = Matrix4<f64>;

impl<T: Real> Matrix4<T> {
    pub fn zero() -> Self {
        Matrix4 { m: [[Complex::zero(); 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.m[i][i] = Complex::one();
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        (0..4).fold(Complex::zero(), |acc, i| acc + self.m[i][i])
    }
}

impl Matrix4C {
    pub fn frobenius_norm(&self) -> f64 {
        self.m.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    fn one_norm(&self) -> f64 {
        (0..4).map(|j| (0..4).map(|i| self.m[i][j].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Gauss–Jordan inverse with partial pivoting; `None` on an exactly zero pivot.
    pub fn try_inverse(&self) -> Option<Self> {
        let mut a = self.m;
        let mut inv = Self::identity().m;
        for col in 0..4 {
            let pivot = (col..4).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
            if a[pivot][col].norm() == 0.0 {
                return None;
            }
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv();
            for j in 0..4 {
                a[col][j] *= p;
                inv[col][j] *= p;
            }
            for row in 0..4 {
                if row == col {
                    continue;
                }
                let f = a[row][col];
                if f.is_zero() {
                    continue;
                }
                for j in 0..4 {
                    a[row][j] = a[row][j] - f * a[col][j];
                    inv[row][j] = inv[row][j] - f * inv[col][j];
                }
            }
        }
        Some(Matrix4 { m: inv })
    }
}

impl<T: Real> Mul for Matrix4<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.m[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..4 {
                    out.m[i][j] = out.m[i][j] + a * rhs.m[k][j];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for Matrix4<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.m[i][j] = self.m[i][j] + rhs.m[i][j];
            }
        }
        self
    }
}

impl<T: Real> Sub for Matrix4<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.m[i][j] = self.m[i][j] - rhs.m[i][j];
            }
        }
        self
    }
}

/// Every blade matrix in the Dirac representation is monomial: row `r` has a
/// single entry `i^phase` in column `col`.
#[derive(Debug, Clone, Copy)]
struct MonomialRow {
    col: usize,
    phase: u8,
}

type IntMatrix = [[Complex<i64>; 4]; 4];

fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = [[Complex::new(0, 0); 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            for j in 0..4 {
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Dirac representation: `γ⁰ = diag(1, 1, -1, -1)`, `γᵏ = [[0, σₖ], [-σₖ, 0]]`.
fn generator_matrices() -> [IntMatrix; 4] {
    let z = Complex::new(0i64, 0);
    let one = Complex::new(1i64, 0);
    let i = Complex::new(0i64, 1);
    let sigma = [
        [[z, one], [one, z]],
        [[z, -i], [i, z]],
        [[one, z], [z, -one]],
    ];
    let mut gammas = [[[z; 4]; 4]; 4];
    for d in 0..4 {
        gammas[0][d][d] = if d < 2 { one } else { -one };
    }
    for (k, s) in sigma.iter().enumerate() {
        let g = &mut gammas[k + 1];
        for r in 0..2 {
            for c in 0..2 {
                g[r][c + 2] = s[r][c];
                g[r + 2][c] = -s[r][c];
            }
        }
    }
    gammas
}

fn blade_table() -> &'static [[MonomialRow; 4]; 16] {
    static TABLE: OnceLock<[[MonomialRow; 4]; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let gammas = generator_matrices();
        let mut table = [[MonomialRow { col: 0, phase: 0 }; 4]; 16];
        for b in BladeIndex::all() {
            let mut m: IntMatrix = [[Complex::new(0, 0); 4]; 4];
            for d in 0..4 {
                m[d][d] = Complex::new(1, 0);
            }
            for a in b.indices() {
                m = int_mul(&m, &gammas[a]);
            }
            for (r, row) in m.iter().enumerate() {
                let (col, v) = row
                    .iter()
                    .enumerate()
                    .find(|(_, v)| **v != Complex::new(0, 0))
                    .expect("blade matrices are invertible");
                let phase = match (v.re, v.im) {
                    (1, 0) => 0,
                    (0, 1) => 1,
                    (-1, 0) => 2,
                    (0, -1) => 3,
                    other => unreachable!("non-unit entry {other:?}"),
                };
                table[b.index()][r] = MonomialRow { col, phase };
            }
        }
        table
    })
}

fn phase_value<T: Real>(phase: u8) -> Complex<T> {
    match phase {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// Image of `U` under the fixed Dirac representation.
pub fn gamma_rep<T: Real>(u: &Clifford<T>) -> Matrix4<T> {
    let table = blade_table();
    let mut out = Matrix4::zero();
    for b in BladeIndex::all() {
        let c = u.coeff(b);
        if c.is_zero() {
            continue;
        }
        for (r, row) in table[b.index()].iter().enumerate() {
            out.m[r][row.col] = out.m[r][row.col] + phase_value::<T>(row.phase) * c;
        }
    }
    out
}

/// Inverse of [`gamma_rep`] using trace orthogonality `c_A = tr(Γ_A⁻¹ M) / 4`.
/// The representation is onto `Mat(4, ℂ)`, so every matrix has a preimage.
pub fn rep_inverse<T: Real>(m: &Matrix4<T>) -> Clifford<T> {
    let table = blade_table();
    let four = T::from_int(4);
    Clifford::from_terms(BladeIndex::all().map(|b| {
        let tr = table[b.index()]
            .iter()
            .enumerate()
            .fold(Complex::<T>::zero(), |acc, (r, row)| acc + phase_value::<T>(row.phase) * m.m[row.col][r]);
        // Γ_A⁻¹ = sign(A·A) Γ_A
        let (sign, _) = b.mul(b);
        let c = if sign > 0 { tr } else { -tr };
        (b, c / four)
    }))
}

/// Inverse through the representation, rejecting ill-conditioned elements.
pub fn inverse(u: &CliffordElement) -> Result<CliffordElement> {
    inverse_with_cap(u, CONDITION_CAP)
}

pub fn inverse_with_cap(u: &CliffordElement, cap: f64) -> Result<CliffordElement> {
    let m = gamma_rep(u);
    let inv = m.try_inverse().ok_or(Error::SingularElement { condition: f64::INFINITY })?;
    let condition = m.one_norm() * inv.one_norm();
    if !condition.is_finite() || condition > cap {
        return Err(Error::SingularElement { condition });
    }
    Ok(rep_inverse(&inv))
}

/// Numerical rank by Gaussian elimination; pivots below `tol · max(1, ‖M‖)` count as zero.
pub fn rank(m: &Matrix4C, tol: f64) -> usize {
    let threshold = tol * m.frobenius_norm().max(1.0);
    let mut a = m.m;
    let mut rank = 0;
    for col in 0..4 {
        let Some(pivot) = (rank..4).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())) else {
            break;
        };
        if a[pivot][col].norm() <= threshold {
            continue;
        }
        a.swap(rank, pivot);
        for row in rank + 1..4 {
            let f = a[row][col] / a[rank][col];
            for j in col..4 {
                let v = a[rank][j];
                a[row][j] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactElement;

    type E = CliffordElement;

    #[test]
    fn unit_maps_to_identity() {
        assert_eq!(gamma_rep(&E::unit()), Matrix4::identity());
        assert_eq!(gamma_rep(&(E::generator(0) * E::generator(0))), Matrix4::identity());
        let g0 = gamma_rep(&E::generator(0));
        assert_eq!(g0 * g0, Matrix4::identity());
    }

    #[test]
    fn generator_adjoint_structure() {
        let g0 = gamma_rep(&E::generator(0));
        assert_eq!(g0.adjoint(), g0);
        for k in 1..4 {
            let g = gamma_rep(&E::generator(k));
            assert_eq!(g.adjoint(), Matrix4::zero() - g, "γ{k} skew-adjoint");
        }
        let diag: Vec<f64> = (0..4).map(|d| g0.m[d][d].re).collect();
        assert_eq!(diag, [1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn exact_representation_is_a_homomorphism_on_blades() {
        for a in BladeIndex::all() {
            for b in BladeIndex::all() {
                let (ea, eb) = (ExactElement::blade(a), ExactElement::blade(b));
                assert_eq!(gamma_rep(&(ea * eb)), gamma_rep(&ea) * gamma_rep(&eb));
            }
            let ea = ExactElement::blade(a);
            assert_eq!(rep_inverse(&gamma_rep(&ea)), ea);
            assert_eq!(gamma_rep(&ea.herm_conj()), gamma_rep(&ea).adjoint());
        }
    }

    #[test]
    fn projector_rank_and_singularity() {
        let t2 = (E::unit() + E::generator(0)) * 0.5;
        assert_eq!(rank(&gamma_rep(&t2), 1e-10), 2);
        assert_eq!(rank(&gamma_rep(&E::unit()), 1e-10), 4);
        assert_eq!(rank(&Matrix4::zero(), 1e-10), 0);
        assert!(matches!(inverse(&t2), Err(Error::SingularElement { .. })));
        assert!(matches!(inverse(&E::zero()), Err(Error::SingularElement { .. })));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&E::unit()).unwrap(), E::unit());
        let v = E::basis(&[1, 2]) * 0.3 + E::generator(0).times_i() * 0.7;
        let w = crate::algebra::exp_default(&v).unwrap();
        let wm = crate::algebra::exp_default(&-v).unwrap();
        assert!(inverse(&w).unwrap().approx_eq(&wm, 1e-12));
        assert!((w * inverse(&w).unwrap()).approx_eq(&E::unit(), 1e-12));
    }
}
