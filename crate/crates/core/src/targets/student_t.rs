use super::{check_dim, Target, TargetEval};
use crate::linalg::SymmetricMatrix;
use crate::math::ln_1p;
use crate::{Error, Result};

/// Univariate Student-t with `ν` degrees of freedom, kernel
/// `-(ν+1)/2 · log(1 + x²/ν)`. The log-density has inflection points at `|x| = √ν`.
#[derive(Debug, Clone, Copy)]
pub struct StudentT {
    nu: f64,
}

impl StudentT {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::param("degrees of freedom must be positive"));
        }
        Ok(Self { nu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

impl Target for StudentT {
    fn dim(&self) -> usize {
        1
    }

    fn evaluate(&self, x: &[f64]) -> Result<TargetEval> {
        check_dim(1, x)?;
        let (nu, x) = (self.nu, x[0]);
        let s = nu + x * x;
        let hess = -(nu + 1.0) * (nu - x * x) / (s * s);
        Ok(TargetEval {
            log_kernel: -0.5 * (nu + 1.0) * ln_1p(x * x / nu),
            grad: alloc::vec![-(nu + 1.0) * x / s],
            hess: SymmetricMatrix::new(1, alloc::vec![hess])?,
        })
    }

    /// Fisher information of the location parameter, `(ν+1)/(ν+3)`.
    fn fisher(&self, x: &[f64]) -> Option<Result<SymmetricMatrix>> {
        let info = (self.nu + 1.0) / (self.nu + 3.0);
        Some(check_dim(1, x).and_then(|_| SymmetricMatrix::new(1, alloc::vec![info])))
    }
}
