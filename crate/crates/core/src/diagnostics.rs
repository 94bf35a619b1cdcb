//! Post-hoc chain analysis.

use alloc::vec::Vec;

use crate::kernel::Trace;
use crate::linalg::{symmetric_eigen, SymmetricMatrix};
use crate::math::{ln, sqrt};
use crate::{Error, Result};

/// Effective sample size of one series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ess {
    pub ess: f64,
    /// The series is constant, so `ess` is set to its length.
    pub degenerate: bool,
}

/// ESS by Geyer's initial monotone sequence estimator.
///
/// Autocovariances are summed directly (no FFT) and normalized by `N`. Pair
/// sums `Γ_m = γ_{2m} + γ_{2m+1}` are accumulated up to the first negative
/// one, each replaced by the running minimum, and
/// `ESS = N / (-1 + 2 Σ Γ_m / γ_0)`. The result is capped at `N · log10(N)`,
/// which only matters for antithetic series.
pub fn ess_imse(series: &[f64]) -> Result<Ess> {
    let n = series.len();
    if n < 10 {
        return Err(Error::SeriesTooShort { min: 10, len: n });
    }
    if let Some(index) = series.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let nf = n as f64;
    let mean = series.iter().sum::<f64>() / nf;
    let centered: Vec<f64> = series.iter().map(|v| v - mean).collect();
    let autocov = |k: usize| centered[..n - k].iter().zip(&centered[k..]).map(|(a, b)| a * b).sum::<f64>() / nf;

    let gamma0 = autocov(0);
    if gamma0 == 0.0 {
        return Ok(Ess { ess: nf, degenerate: true });
    }
    let mut sum = 0.0;
    let mut running_min = f64::INFINITY;
    let mut m = 0;
    while 2 * m + 1 < n {
        let pair = if m == 0 { gamma0 } else { autocov(2 * m) } + autocov(2 * m + 1);
        if pair < 0.0 {
            break;
        }
        running_min = running_min.min(pair);
        sum += running_min;
        m += 1;
    }
    let tau = -1.0 + 2.0 * sum / gamma0;
    let cap = nf * ln(nf) / core::f64::consts::LN_10;
    let ess = if tau > 0.0 { (nf / tau).min(cap) } else { cap };
    Ok(Ess { ess, degenerate: false })
}

/// Per-coordinate ESS of a trace with cost normalizations.
#[derive(Debug, Clone, PartialEq)]
pub struct EssReport {
    pub per_coordinate: Vec<f64>,
    pub degenerate: Vec<bool>,
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub iterations: usize,
    pub seconds: f64,
    pub grad_evals: usize,
    pub min_ess_per_second: f64,
    pub min_ess_per_grad_eval: f64,
}

impl EssReport {
    /// `seconds` is the wall-clock time of the retained iterations.
    pub fn from_trace(trace: &Trace, seconds: f64) -> Result<Self> {
        let mut per_coordinate = Vec::with_capacity(trace.dim);
        let mut degenerate = Vec::with_capacity(trace.dim);
        for j in 0..trace.dim {
            let e = ess_imse(&trace.coordinate(j))?;
            per_coordinate.push(e.ess);
            degenerate.push(e.degenerate);
        }
        let mut sorted = per_coordinate.clone();
        sorted.sort_by(f64::total_cmp);
        let k = sorted.len();
        let median = if k % 2 == 1 { sorted[k / 2] } else { 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]) };
        let min = sorted[0];
        let grad_evals = trace.grad_evals();
        Ok(Self {
            min,
            median,
            max: sorted[k - 1],
            iterations: trace.len(),
            seconds,
            grad_evals,
            min_ess_per_second: min / seconds,
            min_ess_per_grad_eval: min / grad_evals as f64,
            per_coordinate,
            degenerate,
        })
    }
}

/// Fraction of accepted proposals.
pub fn acceptance_rate(trace: &Trace) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::Degenerate("empty trace"));
    }
    Ok(trace.records.iter().filter(|r| r.accepted).count() as f64 / trace.len() as f64)
}

/// Longest run of consecutive identical states lying in `region`.
pub fn max_stick_run<F: Fn(&[f64]) -> bool>(trace: &Trace, region: F) -> usize {
    longest_run((0..trace.len()).map(|i| trace.position(i)), region)
}

/// [`max_stick_run`] over any sequence of states.
pub fn longest_run<'a, I, F>(states: I, region: F) -> usize
where
    I: IntoIterator<Item = &'a [f64]>,
    F: Fn(&[f64]) -> bool,
{
    let mut best = 0;
    let mut run = 0;
    let mut prev: Option<&[f64]> = None;
    for s in states {
        if !region(s) {
            run = 0;
        } else if prev == Some(s) && run > 0 {
            run += 1;
        } else {
            run = 1;
        }
        best = best.max(run);
        prev = Some(s);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileBin {
    pub lo: f64,
    pub hi: f64,
    pub mean_eps: f64,
    pub count: usize,
}

/// Mean forward step size binned by the first coordinate of the state the
/// step was taken from. Bins are `[edges[k], edges[k+1])`; empty bins are left out.
pub fn step_size_profile(trace: &Trace, edges: &[f64]) -> Vec<ProfileBin> {
    let bins = edges.len().saturating_sub(1);
    let mut sums = alloc::vec![0.0; bins];
    let mut counts = alloc::vec![0usize; bins];
    for (i, r) in trace.records.iter().enumerate() {
        // the step of iteration i starts from the state after iteration i-1
        let from = if i == 0 { None } else { Some(trace.position(i - 1)[0]) };
        let Some(x) = from else { continue };
        if let Some(k) = (0..bins).find(|&k| x >= edges[k] && x < edges[k + 1]) {
            sums[k] += r.eps_f;
            counts[k] += 1;
        }
    }
    (0..bins)
        .filter(|&k| counts[k] > 0)
        .map(|k| ProfileBin { lo: edges[k], hi: edges[k + 1], mean_eps: sums[k] / counts[k] as f64, count: counts[k] })
        .collect()
}

/// Pearson correlation.
pub fn correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    if a.len() < 3 {
        return Err(Error::SeriesTooShort { min: 3, len: a.len() });
    }
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::Degenerate("constant input"));
    }
    Ok((sab / sqrt(saa * sbb)).clamp(-1.0, 1.0))
}

pub fn min_eigenvalue(h: &SymmetricMatrix) -> Result<f64> {
    Ok(symmetric_eigen(h)?.values[0])
}

/// Sample mean and its naive standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
}

pub fn mean_estimate(values: &[f64]) -> Result<MeanEstimate> {
    if values.len() < 2 {
        return Err(Error::SeriesTooShort { min: 2, len: values.len() });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Ok(MeanEstimate { mean, std_error: sqrt(var / n) })
}
