mod common;

use common::*;
use smmala::diagnostics::*;
use smmala::kernel::{run_chain, KernelKind, SamplerConfig};
use smmala::rng::standard_normal;
use smmala::targets::StudentT;
use smmala::SymmetricMatrix;

fn iid(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| standard_normal(&mut r)).collect()
}

fn ar1(n: usize, phi: f64, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    let mut x = standard_normal(&mut r) / (1.0 - phi * phi).sqrt();
    (0..n)
        .map(|_| {
            x = phi * x + standard_normal(&mut r);
            x
        })
        .collect()
}

#[test]
fn iid_ess_is_close_to_n() {
    let n = 100_000;
    let e = ess_imse(&iid(n, 1)).unwrap();
    assert!(!e.degenerate);
    assert!(e.ess >= 0.9 * n as f64 && e.ess <= 1.1 * n as f64, "{}", e.ess);
}

#[test]
fn ar1_ess_matches_integrated_autocorrelation() {
    let n = 100_000;
    let e = ess_imse(&ar1(n, 0.9, 2)).unwrap().ess;
    let expected = n as f64 / 19.0;
    assert!((e / expected - 1.0).abs() <= 0.15, "{e} vs {expected}");
}

#[test]
fn ess_is_affine_invariant() {
    let s = ar1(5000, 0.5, 3);
    let base = ess_imse(&s).unwrap().ess;
    for (a, b) in [(2.0, 0.0), (0.25, 0.0), (1.0, 7.5), (-3.0, 1e3)] {
        let t: Vec<f64> = s.iter().map(|v| a * v + b).collect();
        let e = ess_imse(&t).unwrap().ess;
        assert!((e - base).abs() <= 1e-9 * base, "a={a} b={b}");
    }
    // scaling by a power of two is exact
    let t: Vec<f64> = s.iter().map(|v| 4.0 * v).collect();
    assert_eq!(ess_imse(&t).unwrap().ess, base);
}

#[test]
fn ess_rejects_bad_input() {
    assert!(ess_imse(&[1.0; 5]).is_err());
    let mut s = iid(20, 4);
    s[3] = f64::NAN;
    assert!(ess_imse(&s).is_err());
}

#[test]
fn independent_pairs_are_uncorrelated() {
    let a = iid(10_000, 5);
    let b = iid(10_000, 6);
    assert!(correlation(&a, &b).unwrap().abs() < 0.05);
}

/// Eigenvalues of a symmetric 3 × 3 matrix by the trigonometric solution of
/// its characteristic cubic.
fn cubic_eigenvalues(a: &SymmetricMatrix) -> [f64; 3] {
    let g = |i, j| a.get(i, j);
    let p1 = g(0, 1).powi(2) + g(0, 2).powi(2) + g(1, 2).powi(2);
    let q = (g(0, 0) + g(1, 1) + g(2, 2)) / 3.0;
    let p2 = (g(0, 0) - q).powi(2) + (g(1, 1) - q).powi(2) + (g(2, 2) - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let b = |i, j| (g(i, j) - if i == j { q } else { 0.0 }) / p;
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    let l1 = q + 2.0 * p * phi.cos();
    let l3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    [l3, 3.0 * q - l1 - l3, l1]
}

#[test]
fn min_eigenvalue_matches_cubic_roots() {
    let mut r = rng(7);
    for _ in 0..200 {
        let a = random_symmetric(&mut r, 3);
        let oracle = cubic_eigenvalues(&a);
        let got = min_eigenvalue(&a).unwrap();
        assert!((got - oracle[0]).abs() <= 1e-8, "{got} vs {oracle:?}");
    }
}

#[test]
fn stick_runs_ignore_labels() {
    let t = StudentT::new(4.0).unwrap();
    let tr = run_chain(&t, &KernelKind::FixedSmmala { eps: 0.75 }, &SamplerConfig::default(), 3000, 0, 8, &[0.0]).unwrap();
    let all = max_stick_run(&tr, |_| true);
    assert!(all >= 1);
    // strictly increasing relabeling x ↦ x³ + 2x
    let relabeled: Vec<Vec<f64>> = tr.coordinate(0).iter().map(|x| vec![x * x * x + 2.0 * x]).collect();
    assert_eq!(longest_run(relabeled.iter().map(|v| v.as_slice()), |_| true), all);
}

#[test]
fn acceptance_and_profile() {
    let t = StudentT::new(4.0).unwrap();
    let tr = run_chain(&t, &KernelKind::FixedSmmala { eps: 0.75 }, &SamplerConfig::default(), 1000, 0, 9, &[0.0]).unwrap();
    let rate = acceptance_rate(&tr).unwrap();
    let count = tr.records.iter().filter(|r| r.accepted).count();
    assert_eq!(rate, count as f64 / 1000.0);
    // fixed step: every populated bin has mean ε = 0.75
    let prof = step_size_profile(&tr, &[-10.0, -1.0, 0.0, 1.0, 10.0]);
    assert!(!prof.is_empty());
    assert!(prof.iter().all(|b| b.mean_eps == 0.75));
    let mut empty = tr.clone();
    empty.records.clear();
    empty.positions.clear();
    assert!(step_size_profile(&empty, &[0.0, 1.0]).is_empty());
    assert!(acceptance_rate(&empty).is_err());
}

#[test]
fn ess_report_normalizations() {
    let t = StudentT::new(4.0).unwrap();
    let tr = run_chain(&t, &KernelKind::AmhMala, &SamplerConfig::default(), 2000, 0, 10, &[0.0]).unwrap();
    let rep = EssReport::from_trace(&tr, 2.0).unwrap();
    assert_eq!(rep.iterations, 2000);
    assert_eq!(rep.min, rep.per_coordinate[0]);
    assert_eq!(rep.min_ess_per_second, rep.min / 2.0);
    assert_eq!(rep.grad_evals, tr.grad_evals());
    assert!(rep.min > 0.0);
}
