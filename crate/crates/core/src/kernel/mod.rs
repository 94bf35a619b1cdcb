//! Sampling engine.
//!
//! * [`smmala_propose`], [`smmala_logq`] – the preconditioned Langevin proposal;
//! * [`energy_error`] – energy error of one leapfrog trial step under the
//!   dummy Hamiltonian with mass matrix `G(x)`;
//! * [`adaptive_step`] – backtracking line search choosing `ε(x, w)`;
//! * [`mwg_step`] – one Metropolis-within-Gibbs iteration on `π(x)π(w)`;
//! * [`fixed_step_smmala_step`], [`hmc_step`] – reference kernels;
//! * [`run_chain`] – seeded driver producing a [`Trace`].

use alloc::vec::Vec;

use crate::metric::{metric_eig, metric_fixed, metric_mchol, MetricKind, MetricTensor};
use crate::targets::{Target, TargetEval};
use crate::{Error, Result};

mod chain;
mod hmc;
mod line_search;
mod mwg;
mod proposal;

pub use chain::{run_chain, run_chain_with_rng, KernelKind, Trace};
pub use hmc::{hmc_step, hmc_transition, leapfrog, HmcOutcome};
pub use line_search::{adaptive_step, line_search, StepSize};
pub use mwg::{fixed_step_smmala_step, mwg_step};
pub use proposal::{energy_error, proposal_mean, smmala_logq, smmala_propose, EnergyTrial};

/// Tuning of the adaptive step size sMMALA kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    /// `γ`: largest accepted absolute trial energy error.
    pub gamma: f64,
    /// Absolute energy error above which the step is cut by `rho`.
    pub beta: f64,
    /// Hard decrement factor.
    pub rho: f64,
    /// Largest (first trial) step size `ε̄`.
    pub eps_bar: f64,
    /// Modified Cholesky scale, also the eigenvalue floor.
    pub u: f64,
    pub max_ls_iters: usize,
    pub eps_min: f64,
    pub metric: MetricKind,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            beta: 10.0,
            rho: 0.5,
            eps_bar: 1.0,
            u: 1e-3,
            max_ls_iters: 25,
            eps_min: 1e-6,
            metric: MetricKind::ModifiedCholesky,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < self.beta) {
            return Err(Error::param("need 0 < gamma < beta"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::param("need 0 < rho < 1"));
        }
        if !(self.eps_min > 0.0 && self.eps_min < self.eps_bar && self.eps_bar.is_finite()) {
            return Err(Error::param("need 0 < eps_min < eps_bar < inf"));
        }
        if !(self.u > 0.0 && self.u < 1.0) {
            return Err(Error::param("need 0 < u < 1"));
        }
        if self.max_ls_iters == 0 {
            return Err(Error::param("max_ls_iters must be positive"));
        }
        Ok(())
    }

    /// Metric tensor at `x` for the configured strategy.
    pub fn metric_at<T: Target + ?Sized>(&self, target: &T, x: &[f64], eval: &TargetEval) -> Result<MetricTensor> {
        match &self.metric {
            MetricKind::ModifiedCholesky => metric_mchol(&eval.hess, self.u),
            MetricKind::Eigen => metric_eig(&eval.hess, self.u),
            MetricKind::Fisher => {
                let g = target.fisher(x).ok_or_else(|| Error::param("target has no Fisher information"))??;
                metric_fixed(&g)
            }
            MetricKind::Fixed(m) => {
                if m.dim() != x.len() {
                    return Err(Error::DimensionMismatch { expected: m.dim(), found: x.len() });
                }
                Ok(m.clone())
            }
        }
    }
}

/// Current position with its auxiliary momentum draw and cached evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    pub eval: TargetEval,
    pub metric: MetricTensor,
}

impl ChainState {
    pub fn new<T: Target + ?Sized>(target: &T, cfg: &SamplerConfig, x: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        if w.len() != x.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: w.len() });
        }
        let eval = target.evaluate(&x)?;
        if !eval.is_valid() {
            return Err(Error::param("initial point is outside the target support"));
        }
        let metric = cfg.metric_at(target, &x, &eval)?;
        Ok(Self { x, w, eval, metric })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// Everything recorded about one proposal.
#[derive(Debug, Clone, PartialEq)]
pub struct ProposalRecord {
    pub x_star: Vec<f64>,
    pub eps_f: f64,
    /// `NaN` when the proposal fell outside the support and no backward search ran.
    pub eps_b: f64,
    pub alpha: f64,
    pub accepted: bool,
    /// Forward energy error of the actual proposal.
    pub delta_f: f64,
    /// Backward energy error of the actual proposal (`NaN` when not defined).
    pub delta_b: f64,
    pub ls_iters_f: usize,
    pub ls_iters_b: usize,
    /// Target evaluations (value, gradient and Hessian) spent on this iteration.
    pub grad_evals: usize,
}
