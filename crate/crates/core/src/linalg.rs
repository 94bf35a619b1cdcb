//! Dense matrix types and the triangular / symmetric primitives the sampler
//! is built on. Storage is row-major `f64`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::sqrt;
use crate::{Error, Result};

/// Dense symmetric matrix. Symmetry and finiteness are checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from row-major entries; entries must be finite and exactly symmetric.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        for i in 0..dim {
            for j in 0..i {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { dim, data })
    }

    /// Builds from a function of `(i, j)` evaluated on the lower triangle
    /// (`j <= i`) and mirrored.
    pub fn from_lower_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..=i {
                let v = f(i, j);
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        Self::new(dim, data)
    }

    /// Symmetrizes `(A + Aᵀ)/2` before validating.
    pub fn symmetrized(dim: usize, data: &[f64]) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Self::from_lower_fn(dim, |i, j| 0.5 * (data[i * dim + j] + data[j * dim + i]))
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim]).expect("identity is valid")
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        Self::from_lower_fn(dim, |i, j| if i == j { diag[i] } else { 0.0 })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// `-A`. Negation is exact, so factorizing `-(-A)` reproduces `A` bit for bit.
    pub fn negated(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|v| -v).collect() }
    }

    /// `ν`, the largest absolute diagonal entry.
    pub fn max_abs_diagonal(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).abs()).fold(0.0, f64::max)
    }

    /// `ξ`, the largest absolute off-diagonal entry (0 when `dim == 1`).
    pub fn max_abs_off_diagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.dim {
            for j in 0..i {
                m = m.max(self.get(i, j).abs());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim);
        (0..self.dim).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.data.iter().map(|v| v * v).sum())
    }
}

/// Dense lower-triangular matrix (upper part stored as zeros).
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangular {
    dim: usize,
    data: Vec<f64>,
}

impl LowerTriangular {
    /// Builds from row-major entries; entries above the diagonal must be zero.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if data[i * dim + j] != 0.0 {
                    return Err(Error::param("entry above the diagonal is non-zero"));
                }
            }
        }
        Ok(Self { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// `L x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| dot(&self.data[i * self.dim..i * self.dim + i + 1], &x[..=i])).collect()
    }

    /// `Lᵀ x`.
    pub fn mul_transpose_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let xi = x[i];
            for (j, o) in out.iter_mut().enumerate().take(i + 1) {
                *o += self.data[i * n + j] * xi;
            }
        }
        out
    }

    /// `L Lᵀ` as a dense symmetric matrix.
    pub fn gram(&self) -> SymmetricMatrix {
        let n = self.dim;
        SymmetricMatrix::from_lower_fn(n, |i, j| {
            dot(&self.data[i * n..i * n + j + 1], &self.data[j * n..j * n + j + 1])
        })
        .expect("gram of a finite factor is symmetric")
    }

    /// Solves `L x = b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        solve_lower(self, b)
    }

    /// Solves `Lᵀ x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Result<Vec<f64>> {
        solve_upper_transpose(self, b)
    }
}

/// Forward substitution for `L x = b`.
pub fn solve_lower(l: &LowerTriangular, b: &[f64]) -> Result<Vec<f64>> {
    let n = l.dim;
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    let mut x = vec![0.0; n];
    for i in 0..n {
        let pivot = l.get(i, i);
        if pivot == 0.0 {
            return Err(Error::Singular { index: i });
        }
        let s = b[i] - dot(&l.data[i * n..i * n + i], &x[..i]);
        x[i] = s / pivot;
    }
    Ok(x)
}

/// Back substitution for `Lᵀ x = b`, reading `L` in place.
pub fn solve_upper_transpose(l: &LowerTriangular, b: &[f64]) -> Result<Vec<f64>> {
    let n = l.dim;
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let pivot = l.get(i, i);
        if pivot == 0.0 {
            return Err(Error::Singular { index: i });
        }
        let mut s = b[i];
        for (k, xk) in x.iter().enumerate().skip(i + 1) {
            s -= l.get(k, i) * xk;
        }
        x[i] = s / pivot;
    }
    Ok(x)
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Eigenvalues (ascending) and matching eigenvectors of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// Column `k` (row-major `vectors[i * dim + k]`) is the eigenvector of `values[k]`.
    pub vectors: Vec<f64>,
}

/// Cyclic Jacobi eigendecomposition.
pub fn symmetric_eigen(a: &SymmetricMatrix) -> Result<SymmetricEigen> {
    let n = a.dim();
    let mut m = a.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = a.frobenius_norm();
    let mut converged = n == 1 || scale == 0.0;
    for _sweep in 0..100 {
        if converged {
            break;
        }
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..i {
                off += m[i * n + j] * m[i * n + j];
            }
        }
        if sqrt(off) <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + sqrt(theta * theta + 1.0));
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::EigenNoConvergence);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let values = order.iter().map(|&k| m[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_k] = v[i * n + old_k];
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lower(dim: usize, rows: &[f64]) -> LowerTriangular {
        LowerTriangular::new(dim, rows.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_construction_checks() {
        assert_eq!(SymmetricMatrix::new(0, vec![]), Err(Error::EmptyMatrix));
        assert!(matches!(
            SymmetricMatrix::new(2, vec![1.0, 2.0, 3.0, 1.0]),
            Err(Error::NotSymmetric { row: 1, col: 0 })
        ));
        assert!(matches!(
            SymmetricMatrix::new(1, vec![f64::NAN]),
            Err(Error::NonFinite { index: 0 })
        ));
        let a = SymmetricMatrix::new(2, vec![1.0, -3.0, -3.0, 2.0]).unwrap();
        assert_eq!(a.max_abs_diagonal(), 2.0);
        assert_eq!(a.max_abs_off_diagonal(), 3.0);
    }

    #[test]
    fn solve_lower_examples() {
        let id = LowerTriangular::identity(2);
        assert_eq!(solve_lower(&id, &[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);

        let l = lower(2, &[2.0, 0.0, 1.0, 1.0]);
        let x = solve_lower(&l, &[4.0, 5.0]).unwrap();
        assert_eq!(x, vec![2.0, 3.0]);
        assert_eq!(l.mul_vec(&x), vec![4.0, 5.0]);

        let s3 = sqrt(3.0);
        let x = solve_lower(&lower(1, &[s3]), &[3.0]).unwrap();
        assert!((x[0] - s3).abs() < 1e-15);
        assert!((x[0] * s3 - 3.0).abs() < 1e-15);
    }

    #[test]
    fn solve_upper_transpose_examples() {
        let id = LowerTriangular::identity(2);
        assert_eq!(solve_upper_transpose(&id, &[1.0, 2.0]).unwrap(), vec![1.0, 2.0]);

        let l = lower(2, &[2.0, 0.0, 1.0, 1.0]);
        let x = solve_upper_transpose(&l, &[4.0, 5.0]).unwrap();
        assert_eq!(x, vec![-0.5, 5.0]);
        assert_eq!(l.mul_transpose_vec(&x), vec![4.0, 5.0]);

        let l = lower(3, &[1.5, 0.0, 0.0, -2.0, 0.3, 0.0, 4.0, 1.0, 7.0]);
        assert_eq!(solve_upper_transpose(&l, &[0.0; 3]).unwrap(), vec![0.0; 3]);
        assert_eq!(solve_lower(&l, &[0.0; 3]).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn singular_and_mismatch_errors() {
        let l = lower(2, &[1.0, 0.0, 1.0, 0.0]);
        assert_eq!(solve_lower(&l, &[1.0, 1.0]), Err(Error::Singular { index: 1 }));
        assert_eq!(solve_upper_transpose(&l, &[1.0, 1.0]), Err(Error::Singular { index: 1 }));
        assert!(matches!(solve_lower(&l, &[1.0]), Err(Error::DimensionMismatch { .. })));
        assert!(LowerTriangular::new(2, vec![1.0, 2.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn jacobi_diagonal_and_dense() {
        let a = SymmetricMatrix::diagonal(&[-3.0, 5.0]).unwrap();
        let e = symmetric_eigen(&a).unwrap();
        assert_eq!(e.values, vec![-3.0, 5.0]);

        // eigenvalues 3 and -1
        let a = SymmetricMatrix::new(2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        let e = symmetric_eigen(&a).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        // A v = λ v
        for k in 0..2 {
            let v = [e.vectors[k], e.vectors[2 + k]];
            let av = a.mul_vec(&v);
            for i in 0..2 {
                assert!((av[i] - e.values[k] * v[i]).abs() < 1e-13);
            }
        }
    }
}
