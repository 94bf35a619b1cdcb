//! Target distributions exposing the log kernel with its gradient and Hessian.

use alloc::vec::Vec;

use crate::linalg::SymmetricMatrix;
use crate::Result;

mod binreg;
mod garch;
mod gaussian;
mod student_t;

pub use binreg::{simulate_binreg, BinaryData, BinaryRegression, Link};
pub use garch::{simulate_garch, GarchParams, GarchPrior, GarchT, ReturnSeries};
pub use gaussian::Gaussian;
pub use student_t::StudentT;

/// Log kernel `log π̃(x)`, its gradient `g(x)` and Hessian `H(x)` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetEval {
    pub log_kernel: f64,
    pub grad: Vec<f64>,
    pub hess: SymmetricMatrix,
}

impl TargetEval {
    /// Evaluation outside the support: `log π̃ = -∞`, gradient and Hessian zero.
    pub fn outside_support(dim: usize) -> Self {
        Self {
            log_kernel: f64::NEG_INFINITY,
            grad: alloc::vec![0.0; dim],
            hess: SymmetricMatrix::from_lower_fn(dim, |_, _| 0.0).expect("zero matrix"),
        }
    }

    /// False when the point is outside the support or the recursion blew up.
    pub fn is_valid(&self) -> bool {
        self.log_kernel.is_finite() && self.grad.iter().all(|g| g.is_finite())
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }
}

/// A differentiable target density kernel.
pub trait Target {
    fn dim(&self) -> usize;

    /// Evaluates log kernel, gradient and Hessian. Errors are reserved for
    /// malformed input (wrong dimension); numerical blow-up is reported as an
    /// invalid [`TargetEval`].
    fn evaluate(&self, x: &[f64]) -> Result<TargetEval>;

    /// Fisher information of the likelihood plus the negative Hessian of the
    /// log prior, when the model has one in closed form.
    fn fisher(&self, _x: &[f64]) -> Option<Result<SymmetricMatrix>> {
        None
    }
}

impl<T: Target + ?Sized> Target for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn evaluate(&self, x: &[f64]) -> Result<TargetEval> {
        (**self).evaluate(x)
    }
    fn fisher(&self, x: &[f64]) -> Option<Result<SymmetricMatrix>> {
        (**self).fisher(x)
    }
}

pub(crate) fn check_dim(expected: usize, x: &[f64]) -> Result<()> {
    if x.len() != expected {
        return Err(crate::Error::DimensionMismatch { expected, found: x.len() });
    }
    Ok(())
}
