use smmala::diagnostics::ess_imse;
use smmala::kernel::{run_chain, KernelKind, SamplerConfig};
use smmala::targets::{Gaussian, StudentT, Target};
use smmala::SymmetricMatrix;

const KINDS: [KernelKind; 5] = [
    KernelKind::AmhMala,
    KernelKind::AmhMalaEig,
    KernelKind::FixedSmmala { eps: 0.9 },
    KernelKind::AdaptiveSmmalaFisher,
    KernelKind::Hmc { eps: 0.2, n_leapfrog: 10 },
];

/// `|estimate - truth| / (ESS-based standard error)`.
fn z_score(values: &[f64], truth: f64) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let ess = ess_imse(values).unwrap().ess;
    (mean - truth).abs() / (var / ess).sqrt()
}

fn check<T: Target>(name: &str, t: &T, mean: &[f64], var: &[f64], n: usize, seed: u64) {
    for kind in KINDS {
        let tr = run_chain(t, &kind, &SamplerConfig::default(), n, 1000, seed, mean).unwrap();
        for j in 0..t.dim() {
            let x = tr.coordinate(j);
            let sq: Vec<f64> = x.iter().map(|v| (v - mean[j]).powi(2)).collect();
            let zm = z_score(&x, mean[j]);
            let zv = z_score(&sq, var[j]);
            assert!(zm <= 3.0 && zv <= 3.0, "{name}/{}: coordinate {j}, z = ({zm:.2}, {zv:.2})", kind.name());
        }
    }
}

#[test]
fn standard_normal() {
    check("normal", &Gaussian::standard(1), &[0.0], &[1.0], 20_000, 61);
}

#[test]
fn student_t4() {
    check("t4", &StudentT::new(4.0).unwrap(), &[0.0], &[2.0], 20_000, 62);
}

#[test]
fn correlated_gaussian() {
    let cov = SymmetricMatrix::new(3, vec![1.0, 0.5, 0.2, 0.5, 1.0, 0.3, 0.2, 0.3, 1.0]).unwrap();
    let mean = [0.5, -1.0, 2.0];
    let t = Gaussian::new(mean.to_vec(), &cov).unwrap();
    check("correlated", &t, &mean, &[1.0, 1.0, 1.0], 20_000, 63);
}
