use alloc::vec::Vec;

use crate::linalg::{dot, norm_sq};
use crate::math::ln;
use crate::metric::MetricTensor;
use crate::targets::{Target, TargetEval};
use crate::Result;

/// `x + (ε²/2) G⁻¹ g(x)`.
pub fn proposal_mean(x: &[f64], eps: f64, eval: &TargetEval, metric: &MetricTensor) -> Vec<f64> {
    let drift = metric.solve(&eval.grad);
    let half = 0.5 * eps * eps;
    x.iter().zip(&drift).map(|(xi, di)| xi + half * di).collect()
}

/// `x + (ε²/2) G⁻¹ g(x) + ε L⁻ᵀ noise`. With standard normal `noise` this is a
/// draw from `N(x + (ε²/2) G⁻¹ g, ε² G⁻¹)`.
pub fn smmala_propose(x: &[f64], noise: &[f64], eps: f64, eval: &TargetEval, metric: &MetricTensor) -> Vec<f64> {
    let drift = metric.solve(&eval.grad);
    let scaled = metric.solve_factor_transpose(noise);
    let half = 0.5 * eps * eps;
    x.iter().zip(&drift).zip(&scaled).map(|((xi, di), si)| xi + half * di + eps * si).collect()
}

/// Log density of the sMMALA proposal from `x_from` evaluated at `x_to`.
pub fn smmala_logq(x_to: &[f64], x_from: &[f64], eps: f64, eval_from: &TargetEval, metric_from: &MetricTensor) -> f64 {
    let d = x_to.len() as f64;
    let mean = proposal_mean(x_from, eps, eval_from, metric_from);
    let diff: Vec<f64> = x_to.iter().zip(&mean).map(|(a, m)| a - m).collect();
    let z = metric_from.factor_transpose_mul(&diff);
    -0.5 * d * ln(2.0 * core::f64::consts::PI) - d * ln(eps) + 0.5 * metric_from.log_det()
        - norm_sq(&z) / (2.0 * eps * eps)
}

/// A leapfrog trial step and its energy error.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTrial {
    /// Signed energy error; `-∞` when the trial point is outside the support.
    pub delta: f64,
    pub x_star: Vec<f64>,
    pub eval_star: TargetEval,
}

/// Energy error `H(x, L w) - H(x*, p(ε))` of one leapfrog step of size `ε`
/// started at `q = x`, `p = L(x) w`, with fixed mass matrix `G(x)`.
pub fn energy_error<T: Target + ?Sized>(
    target: &T,
    eps: f64,
    x: &[f64],
    w: &[f64],
    eval: &TargetEval,
    metric: &MetricTensor,
) -> Result<EnergyTrial> {
    let x_star = smmala_propose(x, w, eps, eval, metric);
    let eval_star = target.evaluate(&x_star)?;
    let delta = energy_error_at(eps, w, eval, metric, &eval_star);
    Ok(EnergyTrial { delta, x_star, eval_star })
}

/// `-log π̃(x) + log π̃(x*) - (ε/2) wᵀr - (ε²/8) rᵀr` with `r = L⁻¹(g(x) + g(x*))`.
pub(crate) fn energy_error_at(
    eps: f64,
    w: &[f64],
    eval: &TargetEval,
    metric: &MetricTensor,
    eval_star: &TargetEval,
) -> f64 {
    if !eval_star.is_valid() {
        return f64::NEG_INFINITY;
    }
    let gsum: Vec<f64> = eval.grad.iter().zip(&eval_star.grad).map(|(a, b)| a + b).collect();
    let r = metric.solve_factor(&gsum);
    let delta = eval_star.log_kernel - eval.log_kernel - 0.5 * eps * dot(w, &r) - eps * eps / 8.0 * norm_sq(&r);
    if delta.is_finite() {
        delta
    } else {
        f64::NEG_INFINITY
    }
}

/// Backward energy error of a realized move `x → x*` with step `ε`, computed
/// from the reverse leapfrog step: `s` is the standardized noise that would
/// carry `x*` back to `x`, `r_b = L(x*)⁻¹(g(x) + g(x*))`.
pub(crate) fn backward_energy_error(
    eps: f64,
    x: &[f64],
    eval: &TargetEval,
    x_star: &[f64],
    eval_star: &TargetEval,
    metric_star: &MetricTensor,
) -> f64 {
    let back_mean = proposal_mean(x_star, eps, eval_star, metric_star);
    let diff: Vec<f64> = x.iter().zip(&back_mean).map(|(a, m)| (a - m) / eps).collect();
    let s = metric_star.factor_transpose_mul(&diff);
    energy_error_at(eps, &s, eval_star, metric_star, eval)
}
