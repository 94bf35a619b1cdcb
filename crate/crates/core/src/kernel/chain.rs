use alloc::string::ToString;
use alloc::vec::Vec;

use rand::Rng;

use super::hmc::hmc_step;
use super::mwg::{fixed_step_smmala_step, mwg_step};
use super::{ChainState, ProposalRecord, SamplerConfig};
use crate::metric::MetricKind;
use crate::rng::{chain_rng, standard_normal_vec};
use crate::targets::Target;
use crate::{Error, Result};

/// Which transition kernel [`run_chain`] uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    /// Adaptive step size sMMALA, metric from modified Cholesky of `-H`.
    AmhMala,
    /// Adaptive step size sMMALA, metric from eigenvalue flooring of `-H`.
    AmhMalaEig,
    /// sMMALA with a fixed step and the configured metric.
    FixedSmmala { eps: f64 },
    /// Adaptive step size sMMALA with the target's Fisher metric.
    AdaptiveSmmalaFisher,
    /// Identity mass HMC.
    Hmc { eps: f64, n_leapfrog: usize },
}

impl KernelKind {
    pub fn name(&self) -> &'static str {
        match self {
            KernelKind::AmhMala => "amh_mala",
            KernelKind::AmhMalaEig => "amh_mala_eig",
            KernelKind::FixedSmmala { .. } => "fixed_smmala",
            KernelKind::AdaptiveSmmalaFisher => "adaptive_smmala_fisher",
            KernelKind::Hmc { .. } => "hmc",
        }
    }

    /// `cfg` with the metric this kernel uses.
    fn configure(&self, cfg: &SamplerConfig) -> SamplerConfig {
        let metric = match self {
            KernelKind::AmhMala => MetricKind::ModifiedCholesky,
            KernelKind::AmhMalaEig => MetricKind::Eigen,
            KernelKind::AdaptiveSmmalaFisher => MetricKind::Fisher,
            KernelKind::FixedSmmala { .. } | KernelKind::Hmc { .. } => cfg.metric.clone(),
        };
        SamplerConfig { metric, ..cfg.clone() }
    }
}

/// Retained iterations of one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub dim: usize,
    /// Row-major `len × dim` positions after each retained iteration.
    pub positions: Vec<f64>,
    pub log_kernels: Vec<f64>,
    pub records: Vec<ProposalRecord>,
    pub seed: u64,
    pub kernel: KernelKind,
    /// Configuration actually used, metric included.
    pub config: SamplerConfig,
    pub burn_in: usize,
    pub burn_in_grad_evals: usize,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.positions[i * self.dim..(i + 1) * self.dim]
    }

    /// Coordinate `j` of every retained position.
    pub fn coordinate(&self, j: usize) -> Vec<f64> {
        self.positions.iter().skip(j).step_by(self.dim).copied().collect()
    }

    /// Target evaluations spent on the retained iterations.
    pub fn grad_evals(&self) -> usize {
        self.records.iter().map(|r| r.grad_evals).sum()
    }
}

/// Run `n_burn + n_iters` iterations from `init` and keep the last `n_iters`.
/// Uses stream 0 of the generator seeded by `seed`.
pub fn run_chain<T: Target + ?Sized>(
    target: &T,
    kind: &KernelKind,
    cfg: &SamplerConfig,
    n_iters: usize,
    n_burn: usize,
    seed: u64,
    init: &[f64],
) -> Result<Trace> {
    let mut rng = chain_rng(seed, 0);
    let mut trace = run_chain_with_rng(target, kind, cfg, n_iters, n_burn, &mut rng, init)?;
    trace.seed = seed;
    Ok(trace)
}

/// [`run_chain`] drawing from a caller supplied generator. The returned
/// trace has `seed == 0`.
pub fn run_chain_with_rng<T, R>(
    target: &T,
    kind: &KernelKind,
    cfg: &SamplerConfig,
    n_iters: usize,
    n_burn: usize,
    rng: &mut R,
    init: &[f64],
) -> Result<Trace>
where
    T: Target + ?Sized,
    R: Rng + ?Sized,
{
    cfg.validate()?;
    let dim = target.dim();
    if init.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: init.len() });
    }
    match *kind {
        KernelKind::FixedSmmala { eps } | KernelKind::Hmc { eps, .. } if !(eps > 0.0 && eps.is_finite()) => {
            return Err(Error::param("step size must be positive and finite"));
        }
        KernelKind::Hmc { n_leapfrog: 0, .. } => return Err(Error::param("n_leapfrog must be at least 1")),
        _ => {}
    }
    let cfg = kind.configure(cfg);
    let mut trace = Trace {
        dim,
        positions: Vec::with_capacity(n_iters * dim),
        log_kernels: Vec::with_capacity(n_iters),
        records: Vec::with_capacity(n_iters),
        seed: 0,
        kernel: *kind,
        config: cfg.clone(),
        burn_in: n_burn,
        burn_in_grad_evals: 0,
    };

    let w0 = match kind {
        KernelKind::Hmc { .. } => alloc::vec![0.0; dim],
        _ => standard_normal_vec(rng, dim),
    };
    if !target.evaluate(init)?.is_valid() {
        return Err(Error::Evaluation { iteration: 0, message: "initial point is outside the target support".to_string() });
    }
    let mut state = ChainState::new(target, &cfg, init.to_vec(), w0)?;

    for iteration in 0..n_burn + n_iters {
        let wrap = |e: Error| Error::Evaluation { iteration, message: e.to_string() };
        let record = match *kind {
            KernelKind::AmhMala | KernelKind::AmhMalaEig | KernelKind::AdaptiveSmmalaFisher => {
                let (next, record) = mwg_step(target, state, &cfg, rng).map_err(wrap)?;
                state = next;
                record
            }
            KernelKind::FixedSmmala { eps } => {
                let (next, record) = fixed_step_smmala_step(target, state, eps, &cfg, rng).map_err(wrap)?;
                state = next;
                record
            }
            KernelKind::Hmc { eps, n_leapfrog } => {
                let out = hmc_step(target, &state.x, &state.eval, eps, n_leapfrog, rng).map_err(wrap)?;
                let record = ProposalRecord {
                    x_star: out.x_star,
                    eps_f: out.eps,
                    eps_b: out.eps,
                    alpha: out.alpha,
                    accepted: out.accepted,
                    delta_f: out.energy_error,
                    delta_b: f64::NAN,
                    ls_iters_f: 0,
                    ls_iters_b: 0,
                    grad_evals: out.grad_evals,
                };
                state.x = out.x;
                state.eval = out.eval;
                record
            }
        };
        if iteration < n_burn {
            trace.burn_in_grad_evals += record.grad_evals;
        } else {
            trace.positions.extend_from_slice(&state.x);
            trace.log_kernels.push(state.eval.log_kernel);
            trace.records.push(record);
        }
    }
    Ok(trace)
}
