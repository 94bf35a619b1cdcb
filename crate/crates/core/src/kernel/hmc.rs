use alloc::vec::Vec;

use rand::Rng;

use crate::linalg::norm_sq;
use crate::math::exp;
use crate::rng::{standard_normal_vec, uniform};
use crate::targets::{Target, TargetEval};
use crate::Result;

/// Result of one identity-mass HMC transition.
#[derive(Debug, Clone, PartialEq)]
pub struct HmcOutcome {
    pub x: Vec<f64>,
    pub eval: TargetEval,
    /// End point of the trajectory (equal to the start when it blew up).
    pub x_star: Vec<f64>,
    pub eps: f64,
    pub alpha: f64,
    pub accepted: bool,
    /// `H(start) - H(end)`; `-∞` for a non-finite trajectory.
    pub energy_error: f64,
    pub grad_evals: usize,
}

/// `n` leapfrog steps with unit mass. Returns `None` as soon as the target
/// leaves its support or the state stops being finite.
pub fn leapfrog<T: Target + ?Sized>(
    target: &T,
    q: &[f64],
    p: &[f64],
    eval: &TargetEval,
    eps: f64,
    n: usize,
) -> Result<Option<(Vec<f64>, Vec<f64>, TargetEval)>> {
    let mut q = q.to_vec();
    let mut p = p.to_vec();
    let mut eval = eval.clone();
    for _ in 0..n {
        for (pi, gi) in p.iter_mut().zip(&eval.grad) {
            *pi += 0.5 * eps * gi;
        }
        for (qi, pi) in q.iter_mut().zip(&p) {
            *qi += eps * pi;
        }
        if q.iter().any(|v| !v.is_finite()) {
            return Ok(None);
        }
        eval = target.evaluate(&q)?;
        if !eval.is_valid() {
            return Ok(None);
        }
        for (pi, gi) in p.iter_mut().zip(&eval.grad) {
            *pi += 0.5 * eps * gi;
        }
    }
    Ok(Some((q, p, eval)))
}

/// Deterministic core of [`hmc_step`] given the momentum, step and uniform.
pub fn hmc_transition<T: Target + ?Sized>(
    target: &T,
    x: &[f64],
    eval: &TargetEval,
    momentum: &[f64],
    eps: f64,
    n_leapfrog: usize,
    u: f64,
) -> Result<HmcOutcome> {
    let h0 = -eval.log_kernel + 0.5 * norm_sq(momentum);
    let reject = |x_star: Vec<f64>, energy_error: f64| HmcOutcome {
        x: x.to_vec(),
        eval: eval.clone(),
        x_star,
        eps,
        alpha: 0.0,
        accepted: false,
        energy_error,
        grad_evals: n_leapfrog,
    };
    let Some((q, p, eval_end)) = leapfrog(target, x, momentum, eval, eps, n_leapfrog)? else {
        return Ok(reject(x.to_vec(), f64::NEG_INFINITY));
    };
    let h1 = -eval_end.log_kernel + 0.5 * norm_sq(&p);
    let delta = h0 - h1;
    if !delta.is_finite() {
        return Ok(reject(q, f64::NEG_INFINITY));
    }
    let alpha = exp(delta.min(0.0));
    let accepted = u < alpha;
    Ok(HmcOutcome {
        x: if accepted { q.clone() } else { x.to_vec() },
        eval: if accepted { eval_end } else { eval.clone() },
        x_star: q,
        eps,
        alpha,
        accepted,
        energy_error: delta,
        grad_evals: n_leapfrog,
    })
}

/// Identity-mass HMC with the step jittered uniformly in `[0.9ε, 1.1ε]`.
/// Draws the momentum (`d` normals), the jitter uniform, then the acceptance uniform.
pub fn hmc_step<T, R>(target: &T, x: &[f64], eval: &TargetEval, eps: f64, n_leapfrog: usize, rng: &mut R) -> Result<HmcOutcome>
where
    T: Target + ?Sized,
    R: Rng + ?Sized,
{
    let p = standard_normal_vec(rng, x.len());
    let step = eps * (0.9 + 0.2 * uniform(rng));
    let u = uniform(rng);
    hmc_transition(target, x, eval, &p, step, n_leapfrog, u)
}
