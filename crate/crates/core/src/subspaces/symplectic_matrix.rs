use crate::error::{Error, Result};
use crate::linalg::{null_space, RealMatrix};

use super::basis::PIVOT_TOL;

/// Largest `m` accepted by the brute-force row reduction.
pub const MAX_SYMPLECTIC_M: usize = 8;

/// `sp(m, ℝ) = {u ∈ Mat(2m, ℝ) : uᵀ S = -S u}` with `S = [[0, -I], [I, 0]]`.
#[derive(Debug, Clone)]
pub struct SymplecticMatrixSpace {
    pub m: usize,
    pub s: RealMatrix,
    pub basis: Vec<RealMatrix>,
}

fn block_s(m: usize) -> RealMatrix {
    let n = 2 * m;
    let mut s = RealMatrix::zeros(n, n);
    for i in 0..m {
        s.set(i, m + i, -1.0);
        s.set(m + i, i, 1.0);
    }
    s
}

fn matmul(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let mut out = RealMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x == 0.0 {
                continue;
            }
            for j in 0..b.cols {
                out.set(i, j, out.get(i, j) + x * b.get(k, j));
            }
        }
    }
    out
}

fn transpose(a: &RealMatrix) -> RealMatrix {
    let mut out = RealMatrix::zeros(a.cols, a.rows);
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(j, i, a.get(i, j));
        }
    }
    out
}

impl SymplecticMatrixSpace {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        if m > MAX_SYMPLECTIC_M {
            return Err(Error::ResourceCap { what: "symplectic block size m", value: m, cap: MAX_SYMPLECTIC_M });
        }
        let n = 2 * m;
        let s = block_s(m);
        // rows index the (i, j) entry of uᵀS + Su, columns the unknown u_{ab}
        let mut system = RealMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let row = i * n + j;
                for k in 0..n {
                    let col = k * n + i;
                    system.set(row, col, system.get(row, col) + s.get(k, j));
                    let col = k * n + j;
                    system.set(row, col, system.get(row, col) + s.get(i, k));
                }
            }
        }
        let basis = null_space(&system, PIVOT_TOL)
            .into_iter()
            .map(|x| RealMatrix { rows: n, cols: n, data: x })
            .collect();
        Ok(SymplecticMatrixSpace { m, s, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `‖S² + 1‖_max`.
    pub fn s_squared_defect(&self) -> f64 {
        let sq = matmul(&self.s, &self.s);
        let mut worst: f64 = 0.0;
        for i in 0..sq.rows {
            for j in 0..sq.cols {
                let target = if i == j { -1.0 } else { 0.0 };
                worst = worst.max((sq.get(i, j) - target).abs());
            }
        }
        worst
    }

    /// `‖uᵀS + Su‖_max` for a candidate `u`.
    pub fn algebra_defect(&self, u: &RealMatrix) -> f64 {
        let lhs = matmul(&transpose(u), &self.s);
        let rhs = matmul(&self.s, u);
        lhs.data.iter().zip(&rhs.data).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max)
    }
}

/// Dimension of `sp(m, ℝ)` by brute-force row reduction.
pub fn matrix_sp_dimension(m: usize) -> Result<usize> {
    Ok(SymplecticMatrixSpace::new(m)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: u ∈ sp(m) iff u = S X with X symmetric, so the dimension is the
    /// number of independent entries of a symmetric 2m×2m matrix.
    fn symmetric_parameter_count(n: usize) -> usize {
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).count()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(matrix_sp_dimension(1).unwrap(), 3);
        assert_eq!(matrix_sp_dimension(2).unwrap(), 10);
        assert_eq!(matrix_sp_dimension(3).unwrap(), 21);
        for m in 1..=4 {
            assert_eq!(matrix_sp_dimension(m).unwrap(), symmetric_parameter_count(2 * m));
            assert_eq!(matrix_sp_dimension(m).unwrap(), m * (2 * m + 1));
        }
    }

    #[test]
    fn basis_elements_satisfy_constraint() {
        let sp = SymplecticMatrixSpace::new(2).unwrap();
        assert_eq!(sp.s_squared_defect(), 0.0);
        for u in &sp.basis {
            assert!(sp.algebra_defect(u) < 1e-12);
        }
        let mut id = RealMatrix::zeros(4, 4);
        for i in 0..4 {
            id.set(i, i, 1.0);
        }
        assert!(sp.algebra_defect(&id) > 1.0);
    }

    #[test]
    fn two_by_two_brute_force() {
        // enumerate u with entries in {-1, 0, 1}: members are exactly the trace-free ones
        let sp = SymplecticMatrixSpace::new(1).unwrap();
        let vals = [-1.0, 0.0, 1.0];
        let mut members = 0;
        for a in vals {
            for b in vals {
                for c in vals {
                    for d in vals {
                        let u = RealMatrix { rows: 2, cols: 2, data: vec![a, b, c, d] };
                        let inside = sp.algebra_defect(&u) == 0.0;
                        assert_eq!(inside, a + d == 0.0);
                        members += inside as usize;
                    }
                }
            }
        }
        // 3 free choices of (a, b, c) with d = -a → 27 lattice points in a 3-dim space
        assert_eq!(members, 27);
    }

    #[test]
    fn caps() {
        assert!(matches!(matrix_sp_dimension(9), Err(Error::ResourceCap { .. })));
        assert!(matrix_sp_dimension(0).is_err());
    }
}
