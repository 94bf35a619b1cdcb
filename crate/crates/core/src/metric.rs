//! Position specific metric tensors `G(x) = L Lᵀ`.
//!
//! The sampler never forms `G` or its inverse; every use goes through
//! triangular solves with the factor `L`.

use alloc::vec::Vec;

use crate::linalg::{symmetric_eigen, LowerTriangular, SymmetricMatrix};
use crate::mcholesky::{cholesky, gmw_factorize, FactorizationResult};
use crate::{Error, Result};

/// How a [`MetricTensor`] was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    ModifiedCholesky,
    Eigen,
    Fixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    factorization: FactorizationResult,
    strategy: Strategy,
}

impl MetricTensor {
    fn from_factorization(factorization: FactorizationResult, strategy: Strategy) -> Self {
        Self { factorization, strategy }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.factorization.d.len()
    }

    /// Lower-triangular `L` with `G = L Lᵀ`.
    pub fn factor(&self) -> &LowerTriangular {
        &self.factorization.factor
    }

    /// `log det G`.
    pub fn log_det(&self) -> f64 {
        self.factorization.logdet
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Diagonal perturbation added to `-H` (zero for the eigen and fixed strategies).
    pub fn perturbation(&self) -> &[f64] {
        &self.factorization.perturbation
    }

    /// `G` rebuilt from the square-root free factors. Exact for `dim == 1`.
    pub fn tensor(&self) -> SymmetricMatrix {
        self.factorization.reconstruct()
    }

    /// `L⁻¹ b`.
    pub fn solve_factor(&self, b: &[f64]) -> Vec<f64> {
        self.factor().solve(b).expect("metric factor has a positive diagonal")
    }

    /// `L⁻ᵀ b`.
    pub fn solve_factor_transpose(&self, b: &[f64]) -> Vec<f64> {
        self.factor().solve_transpose(b).expect("metric factor has a positive diagonal")
    }

    /// `G⁻¹ b = L⁻ᵀ (L⁻¹ b)`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.solve_factor_transpose(&self.solve_factor(b))
    }

    /// `Lᵀ v`.
    pub fn factor_transpose_mul(&self, v: &[f64]) -> Vec<f64> {
        self.factor().mul_transpose_vec(v)
    }
}

/// `G = L Lᵀ` from the modified Cholesky factorization of `-H`.
pub fn metric_mchol(hessian: &SymmetricMatrix, u: f64) -> Result<MetricTensor> {
    let f = gmw_factorize(&hessian.negated(), u)?;
    Ok(MetricTensor::from_factorization(f, Strategy::ModifiedCholesky))
}

/// `G = Q diag(max(|λ|, floor)) Qᵀ` where `-H = Q Λ Qᵀ`.
pub fn metric_eig(hessian: &SymmetricMatrix, floor: f64) -> Result<MetricTensor> {
    if !(floor > 0.0) {
        return Err(Error::param("eigenvalue floor must be positive"));
    }
    let neg = hessian.negated();
    let eig = symmetric_eigen(&neg)?;
    let n = neg.dim();
    let lambda: Vec<f64> = eig.values.iter().map(|l| l.abs().max(floor)).collect();
    let q = &eig.vectors;
    let g = if n == 1 {
        SymmetricMatrix::diagonal(&lambda)?
    } else {
        SymmetricMatrix::from_lower_fn(n, |i, j| (0..n).map(|k| q[i * n + k] * lambda[k] * q[j * n + k]).sum())?
    };
    let f = cholesky(&g)?;
    Ok(MetricTensor::from_factorization(f, Strategy::Eigen))
}

/// Cholesky factor of a given SPD matrix.
pub fn metric_fixed(m: &SymmetricMatrix) -> Result<MetricTensor> {
    let f = cholesky(m)?;
    Ok(MetricTensor::from_factorization(f, Strategy::Fixed))
}

/// Metric choice used by the samplers.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricKind {
    /// GMW factorization of `-H(x)` with the sampler's scale `u`.
    ModifiedCholesky,
    /// Eigenvalue flooring of `-H(x)` at the sampler's `u`.
    Eigen,
    /// Fisher information plus negative log-prior Hessian, supplied by the target.
    Fisher,
    /// Position independent mass matrix.
    Fixed(MetricTensor),
}
