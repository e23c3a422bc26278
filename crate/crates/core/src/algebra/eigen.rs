use num_complex::Complex64;

use super::element::CliffordElement;
use super::matrix::{gamma_rep, Matrix4C};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues of a self-adjoint representation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    /// Sorted ascending.
    pub values: [f64; 4],
    /// Largest imaginary part left on the diagonal after convergence.
    pub max_imag: f64,
    pub sweeps: usize,
}

fn off_diagonal(a: &Matrix4C) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a.m[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi on a self-adjoint 4×4 matrix.
pub fn jacobi_hermitian(m: &Matrix4C) -> Spectrum {
    let mut a = *m;
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && off_diagonal(&a) > 1e-15 * scale {
        sweeps += 1;
        for p in 0..3 {
            for q in p + 1..4 {
                let apq = a.m[p][q];
                let b = apq.norm();
                if b <= 1e-300 {
                    continue;
                }
                // D = diag(.., conj(w) at q) makes the (p, q) entry real, then rotate.
                let w = apq / b;
                let app = a.m[p][p].re;
                let aqq = a.m[q][q].re;
                let theta = 0.5 * (2.0 * b).atan2(aqq - app);
                let (s, c) = theta.sin_cos();
                let mut v = Matrix4C::identity();
                v.m[p][p] = Complex64::new(c, 0.0);
                v.m[p][q] = Complex64::new(s, 0.0);
                v.m[q][p] = -w.conj() * s;
                v.m[q][q] = w.conj() * c;
                a = v.adjoint() * a * v;
            }
        }
    }
    let mut values = [0.0; 4];
    let mut max_imag: f64 = 0.0;
    for (i, v) in values.iter_mut().enumerate() {
        *v = a.m[i][i].re;
        max_imag = max_imag.max(a.m[i][i].im.abs());
    }
    values.sort_by(f64::total_cmp);
    Spectrum { values, max_imag, sweeps }
}

/// Spectrum of a Hermitian element through its representation matrix.
pub fn hermitian_spectrum(u: &CliffordElement) -> Result<Spectrum> {
    let residual = u.distance(&u.herm_conj());
    let tol = HERMITIAN_TOL * u.norm().max(1.0);
    if residual > tol {
        return Err(Error::NotHermitian { residual });
    }
    Ok(jacobi_hermitian(&gamma_rep(u)))
}

/// Sorted real eigenvalues of a Hermitian element.
pub fn hermitian_eigenvalues(u: &CliffordElement) -> Result<[f64; 4]> {
    hermitian_spectrum(u).map(|s| s.values)
}
