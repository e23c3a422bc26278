//! Dense real row reduction used for basis and dimension extraction.

/// Row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<f64>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Reduced row echelon form by partial pivoting. Returns the pivot columns.
pub fn rref(m: &mut RealMatrix, pivot_tol: f64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let (best, best_abs) = (row..m.rows)
            .map(|i| (i, m.get(i, col).abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty row range");
        if best_abs <= pivot_tol {
            for i in row..m.rows {
                m.set(i, col, 0.0);
            }
            continue;
        }
        m.swap_rows(row, best);
        let p = m.get(row, col);
        for j in col..m.cols {
            m.set(row, j, m.get(row, j) / p);
        }
        for i in 0..m.rows {
            if i == row {
                continue;
            }
            let f = m.get(i, col);
            if f == 0.0 {
                continue;
            }
            for j in col..m.cols {
                m.set(i, j, m.get(i, j) - f * m.get(row, j));
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &RealMatrix, pivot_tol: f64) -> usize {
    rref(&mut m.clone(), pivot_tol).len()
}

/// Basis of `{x : M x = 0}` read off the free columns of the RREF.
pub fn null_space(m: &RealMatrix, pivot_tol: f64) -> Vec<Vec<f64>> {
    let mut r = m.clone();
    let pivots = rref(&mut r, pivot_tol);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0.0; m.cols];
            x[f] = 1.0;
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(row, f);
            }
            x
        })
        .collect()
}

/// Modified Gram–Schmidt; vectors whose residual falls below `tol` are dropped.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for q in &out {
            let d: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= d * qi;
            }
        }
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > tol {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_null_space() {
        // rows: x + y = 0, 2x + 2y = 0 → null space spanned by (1, -1, 0), (0, 0, 1)
        let mut m = RealMatrix::zeros(2, 3);
        m.set(0, 0, 1.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 2.0);
        m.set(1, 1, 2.0);
        assert_eq!(rank(&m, 1e-10), 1);
        let ns = null_space(&m, 1e-10);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!((x[0] + x[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn orthonormalize_drops_dependents() {
        let q = orthonormalize(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![0.0, 3.0]], 1e-10);
        assert_eq!(q.len(), 2);
        let d: f64 = q[0].iter().zip(&q[1]).map(|(a, b)| a * b).sum();
        assert!(d.abs() < 1e-14);
    }
}
