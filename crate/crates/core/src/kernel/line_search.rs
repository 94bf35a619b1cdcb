use super::proposal::energy_error;
use super::SamplerConfig;
use crate::math::cbrt;
use crate::metric::MetricTensor;
use crate::targets::{Target, TargetEval};
use crate::Result;

/// Outcome of the backtracking line search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSize {
    pub eps: f64,
    /// Number of trial energy errors evaluated.
    pub iterations: usize,
    /// Energy error of the last trial.
    pub delta: f64,
    /// `false` when the search stopped at the iteration cap or the floor.
    pub converged: bool,
}

/// Backtracking search over `ε₁ = ε̄, ε₂, ...` driven by `delta(ε)`.
///
/// A non-finite `delta` counts as larger than `β`.
pub fn line_search<F>(cfg: &SamplerConfig, mut delta: F) -> Result<StepSize>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut eps = cfg.eps_bar;
    let mut iterations = 0;
    loop {
        let d = delta(eps)?;
        iterations += 1;
        let a = if d.is_finite() { d.abs() } else { f64::INFINITY };
        let next = if a > cfg.beta {
            cfg.rho * eps
        } else if a < cfg.gamma {
            return Ok(StepSize { eps, iterations, delta: d, converged: true });
        } else {
            0.95 * cbrt(cfg.gamma / a) * eps
        };
        if iterations >= cfg.max_ls_iters || next < cfg.eps_min {
            return Ok(StepSize { eps: next.max(cfg.eps_min), iterations, delta: d, converged: false });
        }
        eps = next;
    }
}

/// `ε(x, w)`: the step size whose single leapfrog trial from `(x, L(x) w)`
/// has absolute energy error below `γ`.
pub fn adaptive_step<T: Target + ?Sized>(
    target: &T,
    x: &[f64],
    w: &[f64],
    eval: &TargetEval,
    metric: &MetricTensor,
    cfg: &SamplerConfig,
) -> Result<StepSize> {
    line_search(cfg, |eps| Ok(energy_error(target, eps, x, w, eval, metric)?.delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SymmetricMatrix;
    use crate::metric::metric_fixed;
    use crate::targets::Gaussian;
    use alloc::vec::Vec;

    #[test]
    fn first_trial_accepted() {
        let t = Gaussian::standard(1);
        let e = t.evaluate(&[0.0]).unwrap();
        let m = metric_fixed(&SymmetricMatrix::identity(1)).unwrap();
        let s = adaptive_step(&t, &[0.0], &[1.0], &e, &m, &SamplerConfig::default()).unwrap();
        assert_eq!(s.eps, 1.0);
        assert_eq!(s.iterations, 1);
        assert_eq!(s.delta, -0.125);
        assert!(s.converged);
    }

    fn trials(cfg: &SamplerConfig, values: &[f64]) -> (Vec<f64>, StepSize) {
        let mut seen = Vec::new();
        let mut it = values.iter();
        let s = line_search(cfg, |eps| {
            seen.push(eps);
            Ok(*it.next().unwrap_or(&0.0))
        })
        .unwrap();
        (seen, s)
    }

    #[test]
    fn hard_decrement() {
        let (seen, s) = trials(&SamplerConfig::default(), &[25.0, 0.5]);
        assert_eq!(seen, [1.0, 0.5]);
        assert_eq!(s.eps, 0.5);
        assert_eq!(s.iterations, 2);
    }

    #[test]
    fn cubic_decrement() {
        let (seen, _) = trials(&SamplerConfig::default(), &[-8.0, 0.1]);
        assert!((seen[1] - 0.475).abs() < 1e-15);
    }

    #[test]
    fn non_finite_is_hard_decrement() {
        let (seen, _) = trials(&SamplerConfig::default(), &[f64::NEG_INFINITY, f64::NAN, 0.0]);
        assert_eq!(seen, [1.0, 0.5, 0.25]);
    }

    #[test]
    fn boundaries_use_strict_inequalities() {
        // |Δ| = γ is not accepted, |Δ| = β takes the cubic branch
        let (seen, _) = trials(&SamplerConfig::default(), &[1.0, 10.0, 0.0]);
        assert!((seen[1] - 0.95).abs() < 1e-15);
        assert!((seen[2] - 0.95 * 0.95 * 0.1f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn cap_and_floor() {
        let cfg = SamplerConfig { max_ls_iters: 3, ..SamplerConfig::default() };
        let (seen, s) = trials(&cfg, &[f64::INFINITY; 10]);
        assert_eq!(seen.len(), 3);
        assert_eq!(s.eps, 0.125);
        assert!(!s.converged);

        let cfg = SamplerConfig { eps_min: 0.3, ..SamplerConfig::default() };
        let (seen, s) = trials(&cfg, &[f64::INFINITY; 10]);
        assert_eq!(seen, [1.0, 0.5]);
        assert_eq!(s.eps, 0.3);
    }
}
