//! Dense real symmetric matrices with symmetry enforced on construction.

use nalgebra::{DMatrix, DVector};

/// A dense real symmetric matrix. Symmetry is enforced when the matrix
/// is built, so eigenvalue routines can assume it exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    m: DMatrix<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            m: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix {
            m: DMatrix::identity(n, n),
        }
    }

    /// Builds from an upper-triangle generator; the lower triangle is
    /// mirrored.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let m = DMatrix::from_fn(n, n, |i, j| if i <= j { f(i, j) } else { f(j, i) });
        SymMatrix { m }
    }

    /// Symmetrizes an arbitrary square matrix as `(M + M^t) / 2`.
    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "SymMatrix requires a square matrix");
        SymMatrix {
            m: (m + m.transpose()) * 0.5,
        }
    }

    /// Rank-one matrix `v v^t`.
    pub fn outer(v: &DVector<f64>) -> Self {
        SymMatrix { m: v * v.transpose() }
    }

    pub fn size(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    /// Sets the `(i, j)` entry and its mirror.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.m[(i, j)] = v;
        self.m[(j, i)] = v;
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn norm(&self) -> f64 {
        self.m.norm()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues()
            .first()
            .copied()
            .unwrap_or(f64::INFINITY)
    }

    /// Numerical rank: eigenvalues with magnitude above
    /// `rel_tol * max |lambda|`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let ev = self.eigenvalues();
        let max = ev.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if max == 0.0 {
            return 0;
        }
        ev.iter().filter(|l| l.abs() > rel_tol * max).count()
    }

    /// Orthonormal basis of the numerical range (eigenvectors whose
    /// eigenvalue magnitude exceeds `rel_tol * max |lambda|`).
    pub fn range_basis(&self, rel_tol: f64) -> DMatrix<f64> {
        let eig = self.m.clone().symmetric_eigen();
        let max = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let cols: Vec<usize> = (0..self.size())
            .filter(|&k| max > 0.0 && eig.eigenvalues[k].abs() > rel_tol * max)
            .collect();
        let mut basis = DMatrix::zeros(self.size(), cols.len());
        for (out_k, &k) in cols.iter().enumerate() {
            basis.set_column(out_k, &eig.eigenvectors.column(k));
        }
        basis
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        SymMatrix {
            m: &self.m + &other.m,
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &SymMatrix) -> SymMatrix {
        SymMatrix {
            m: &self.m + &other.m * c,
        }
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix { m: &self.m * c }
    }

    /// Nearest positive semidefinite matrix in Frobenius norm: clips
    /// negative eigenvalues to zero.
    pub fn clip_negative(&self) -> SymMatrix {
        let mut eig = self.m.clone().symmetric_eigen();
        for l in eig.eigenvalues.iter_mut() {
            if *l < 0.0 {
                *l = 0.0;
            }
        }
        SymMatrix::from_dense(&eig.recompose())
    }

    /// All `n^2` entries as a flat vector (column-major).
    pub fn vec_entries(&self) -> DVector<f64> {
        DVector::from_column_slice(self.m.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_enforced() {
        let raw = DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 1.0, 2.0]);
        let s = SymMatrix::from_dense(&raw);
        assert_eq!(s.get(0, 1), s.get(1, 0));
        assert_eq!(s.get(0, 1), 2.0);
    }

    #[test]
    fn rank_and_range() {
        let mut s = SymMatrix::zeros(3);
        s.set(0, 0, 2.0);
        s.set(1, 1, 1e-20);
        assert_eq!(s.rank(1e-8), 1);
        assert_eq!(s.range_basis(1e-8).ncols(), 1);
    }

    #[test]
    fn eigenvalues_sorted() {
        let mut s = SymMatrix::zeros(2);
        s.set(0, 0, 3.0);
        s.set(1, 1, -1.0);
        assert_eq!(s.eigenvalues(), vec![-1.0, 3.0]);
        assert_eq!(s.lambda_min(), -1.0);
    }
}
