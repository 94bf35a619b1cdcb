#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smmala::targets::{BinaryRegression, GarchParams, GarchPrior, GarchT, Link, Target};
use smmala::SymmetricMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Central differences of the log kernel.
pub fn fd_gradient<T: Target>(t: &T, x: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|j| {
            let h = 1e-5 * x[j].abs().max(1.0);
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[j] += h;
            xm[j] -= h;
            (t.evaluate(&xp).unwrap().log_kernel - t.evaluate(&xm).unwrap().log_kernel) / (2.0 * h)
        })
        .collect()
}

/// Central differences of the analytic gradient, symmetrized.
pub fn fd_hessian<T: Target>(t: &T, x: &[f64]) -> Vec<f64> {
    let d = x.len();
    let mut h = vec![0.0; d * d];
    for j in 0..d {
        let step = 1e-5 * x[j].abs().max(1.0);
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] += step;
        xm[j] -= step;
        let gp = t.evaluate(&xp).unwrap().grad;
        let gm = t.evaluate(&xm).unwrap().grad;
        for i in 0..d {
            h[i * d + j] = (gp[i] - gm[i]) / (2.0 * step);
        }
    }
    for i in 0..d {
        for j in 0..i {
            let m = 0.5 * (h[i * d + j] + h[j * d + i]);
            h[i * d + j] = m;
            h[j * d + i] = m;
        }
    }
    h
}

/// `max |a - b| / max(max |a|, 1)`.
pub fn rel_err(analytic: &[f64], reference: &[f64]) -> f64 {
    let scale = analytic.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    analytic.iter().zip(reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale
}

pub fn random_spd<R: Rng>(rng: &mut R, d: usize) -> SymmetricMatrix {
    let b: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    SymmetricMatrix::from_lower_fn(d, |i, j| {
        let s: f64 = (0..d).map(|k| b[i * d + k] * b[j * d + k]).sum();
        if i == j { s + d as f64 * 0.1 } else { s }
    })
    .unwrap()
}

pub fn random_symmetric<R: Rng>(rng: &mut R, d: usize) -> SymmetricMatrix {
    let v: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    SymmetricMatrix::from_lower_fn(d, |i, j| v[i * d + j]).unwrap()
}

/// Percent-scale GARCH parameters used for synthetic series.
pub fn garch_truth() -> GarchParams {
    GarchParams { alpha0: 0.01, alpha1: 0.15, beta: 0.8, nu: 5.0 }
}

pub fn garch_target(len: usize, seed: u64) -> GarchT {
    let data = smmala::targets::simulate_garch(&garch_truth(), len, seed).unwrap();
    GarchT::new(data, GarchPrior::default()).unwrap()
}

pub fn binreg_target(link: Link, seed: u64) -> BinaryRegression {
    BinaryRegression::new(smmala::targets::simulate_binreg(200, 5, link, seed).unwrap(), link)
}
