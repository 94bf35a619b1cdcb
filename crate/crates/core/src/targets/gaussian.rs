use alloc::vec::Vec;

use super::{check_dim, Target, TargetEval};
use crate::linalg::{dot, SymmetricMatrix};
use crate::mcholesky::cholesky;
use crate::Result;

/// `N(μ, Σ)` with the normalizing constant dropped.
#[derive(Debug, Clone)]
pub struct Gaussian {
    mean: Vec<f64>,
    precision: SymmetricMatrix,
}

impl Gaussian {
    pub fn new(mean: Vec<f64>, covariance: &SymmetricMatrix) -> Result<Self> {
        check_dim(covariance.dim(), &mean)?;
        let n = mean.len();
        let chol = cholesky(covariance)?;
        // Σ⁻¹ column by column
        let mut inv = alloc::vec![0.0; n * n];
        let mut e = alloc::vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = chol.factor.solve_transpose(&chol.factor.solve(&e)?)?;
            for i in 0..n {
                inv[i * n + j] = col[i];
            }
        }
        let precision = SymmetricMatrix::symmetrized(n, &inv)?;
        Ok(Self { mean, precision })
    }

    pub fn standard(dim: usize) -> Self {
        Self { mean: alloc::vec![0.0; dim], precision: SymmetricMatrix::identity(dim) }
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn precision(&self) -> &SymmetricMatrix {
        &self.precision
    }
}

impl Target for Gaussian {
    fn dim(&self) -> usize {
        self.mean.len()
    }

    fn evaluate(&self, x: &[f64]) -> Result<TargetEval> {
        check_dim(self.dim(), x)?;
        let r: Vec<f64> = x.iter().zip(&self.mean).map(|(a, m)| a - m).collect();
        let pr = self.precision.mul_vec(&r);
        Ok(TargetEval {
            log_kernel: -0.5 * dot(&r, &pr),
            grad: pr.iter().map(|v| -v).collect(),
            hess: self.precision.negated(),
        })
    }

    /// Fisher information of the location parameter, `Σ⁻¹`.
    fn fisher(&self, x: &[f64]) -> Option<Result<SymmetricMatrix>> {
        Some(check_dim(self.dim(), x).map(|_| self.precision.clone()))
    }
}
