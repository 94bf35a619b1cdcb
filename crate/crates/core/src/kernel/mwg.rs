use rand::Rng;

use super::line_search::adaptive_step;
use super::proposal::{backward_energy_error, energy_error_at, smmala_logq, smmala_propose};
use super::{ChainState, ProposalRecord, SamplerConfig};
use crate::math::exp;
use crate::rng::{standard_normal_vec, uniform};
use crate::metric::MetricTensor;
use crate::targets::{Target, TargetEval};
use crate::Result;

/// One Metropolis-within-Gibbs iteration of adaptive step size sMMALA.
///
/// Draws from `rng` in the order: proposal noise `z` (`d` normals), the
/// acceptance uniform, the refreshed `w` (`d` normals).
pub fn mwg_step<T, R>(target: &T, state: ChainState, cfg: &SamplerConfig, rng: &mut R) -> Result<(ChainState, ProposalRecord)>
where
    T: Target + ?Sized,
    R: Rng + ?Sized,
{
    let forward = adaptive_step(target, &state.x, &state.w, &state.eval, &state.metric, cfg)?;
    let (mut next, mut record) = transition(target, state, cfg, rng, forward.eps, |t, s, x, e, m| {
        let b = adaptive_step(t, x, &s.w, e, m, cfg)?;
        Ok((b.eps, b.iterations))
    })?;
    record.ls_iters_f = forward.iterations;
    record.grad_evals += forward.iterations;
    next.w = standard_normal_vec(rng, next.dim());
    Ok((next, record))
}

/// One sMMALA iteration with `ε_f = ε_b = eps`. Draws `z`, then the
/// acceptance uniform; `w` is left untouched.
pub fn fixed_step_smmala_step<T, R>(
    target: &T,
    state: ChainState,
    eps: f64,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<(ChainState, ProposalRecord)>
where
    T: Target + ?Sized,
    R: Rng + ?Sized,
{
    transition(target, state, cfg, rng, eps, |_, _, _, _, _| Ok((eps, 0)))
}

/// Shared proposal / accept step; `backward` returns `(ε_b, line search iterations)`.
fn transition<T, R, B>(
    target: &T,
    state: ChainState,
    cfg: &SamplerConfig,
    rng: &mut R,
    eps_f: f64,
    mut backward: B,
) -> Result<(ChainState, ProposalRecord)>
where
    T: Target + ?Sized,
    R: Rng + ?Sized,
    B: FnMut(&T, &ChainState, &[f64], &TargetEval, &MetricTensor) -> Result<(f64, usize)>,
{
    let d = state.dim();
    let z = standard_normal_vec(rng, d);
    let x_star = smmala_propose(&state.x, &z, eps_f, &state.eval, &state.metric);
    let eval_star = target.evaluate(&x_star)?;
    let mut grad_evals = 1;
    let delta_f = energy_error_at(eps_f, &z, &state.eval, &state.metric, &eval_star);

    let mut eps_b = f64::NAN;
    let mut ls_iters_b = 0;
    let mut delta_b = f64::NAN;
    let mut alpha = 0.0;
    let mut metric_star = None;
    if eval_star.is_valid() {
        let m = cfg.metric_at(target, &x_star, &eval_star)?;
        let (eb, iters) = backward(target, &state, &x_star, &eval_star, &m)?;
        eps_b = eb;
        ls_iters_b = iters;
        grad_evals += iters;
        delta_b = backward_energy_error(eps_b, &state.x, &state.eval, &x_star, &eval_star, &m);
        let log_alpha = eval_star.log_kernel + smmala_logq(&state.x, &x_star, eps_b, &eval_star, &m)
            - state.eval.log_kernel
            - smmala_logq(&x_star, &state.x, eps_f, &state.eval, &state.metric);
        alpha = if log_alpha.is_nan() { 0.0 } else { exp(log_alpha.min(0.0)) };
        metric_star = Some(m);
    }

    let u = uniform(rng);
    let accepted = u < alpha;
    let record = ProposalRecord {
        x_star: x_star.clone(),
        eps_f,
        eps_b,
        alpha,
        accepted,
        delta_f,
        delta_b,
        ls_iters_f: 0,
        ls_iters_b,
        grad_evals,
    };
    let next = match (accepted, metric_star) {
        (true, Some(metric)) => ChainState { x: x_star, w: state.w, eval: eval_star, metric },
        _ => state,
    };
    Ok((next, record))
}
