mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use smmala::linalg::{symmetric_eigen, SymmetricMatrix};
use smmala::{gmw_factorize, FactorizationResult};

const U: f64 = 1e-3;

/// `‖LLᵀ - A - J‖_F / (‖A‖_F + ‖J‖_F)`; equals the plain relative error when `J = 0`.
fn frobenius_gap(f: &FactorizationResult, a: &SymmetricMatrix) -> f64 {
    let g = f.factor.gram();
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = a.get(i, j) + if i == j { f.perturbation[i] } else { 0.0 };
            s += (g.get(i, j) - target).powi(2);
        }
    }
    let j_norm = f.perturbation.iter().map(|v| v * v).sum::<f64>().sqrt();
    s.sqrt() / (a.frobenius_norm() + j_norm)
}

fn check_indefinite(a: &SymmetricMatrix) {
    let f = gmw_factorize(a, U).unwrap();
    let n = a.dim();
    assert!(frobenius_gap(&f, a) <= 1e-10);
    assert!(f.perturbation.iter().all(|&j| j >= 0.0));
    let floor = U * a.max_abs().max(1.0);
    for i in 0..n {
        assert_eq!(f.unit_lower.get(i, i), 1.0);
        assert!(f.factor.get(i, i).powi(2) >= floor * (1.0 - 1e-14), "pivot {i} below the bound");
    }
    assert!(symmetric_eigen(&f.factor.gram()).unwrap().values[0] > 0.0);
    let logdet: f64 = f.d.iter().map(|v| v.ln()).sum();
    assert!((f.logdet - logdet).abs() <= 1e-12 * logdet.abs().max(1.0));
}

#[test]
fn random_spd_matrices_are_not_perturbed() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let d = r.random_range(1..=50);
        let a = random_spd(&mut r, d);
        let f = gmw_factorize(&a, U).unwrap();
        assert!(f.perturbation.iter().all(|&j| j == 0.0), "d = {d}");
        assert!(frobenius_gap(&f, &a) <= 1e-10);
    }
}

#[test]
fn random_indefinite_matrices() {
    let mut r = rng(12);
    let mut checked = 0;
    while checked < 1000 {
        let d = r.random_range(2..=50);
        let a = random_symmetric(&mut r, d);
        if symmetric_eigen(&a).unwrap().values[0] >= 0.0 {
            continue;
        }
        check_indefinite(&a);
        checked += 1;
    }
}

#[test]
fn zero_and_rank_deficient_inputs() {
    check_indefinite(&SymmetricMatrix::new(3, vec![0.0; 9]).unwrap());
    let v = [1.0, -2.0, 0.5];
    let a = SymmetricMatrix::from_lower_fn(3, |i, j| v[i] * v[j]).unwrap();
    check_indefinite(&a);
}

fn symmetric_strategy() -> impl Strategy<Value = SymmetricMatrix> {
    (1usize..8).prop_flat_map(|d| {
        prop::collection::vec(-100.0f64..100.0, d * d)
            .prop_map(move |v| SymmetricMatrix::from_lower_fn(d, |i, j| v[i * d + j]).unwrap())
    })
}

proptest! {
    #[test]
    fn factorization_invariants(a in symmetric_strategy()) {
        check_indefinite(&a);
    }

    #[test]
    fn perturbation_is_diagonal(a in symmetric_strategy(), u in 1e-6f64..0.5) {
        let f = gmw_factorize(&a, u).unwrap();
        let g = f.factor.gram();
        let scale = a.max_abs().max(1.0);
        for i in 0..a.dim() {
            for j in 0..i {
                prop_assert!((g.get(i, j) - a.get(i, j)).abs() <= 1e-10 * scale);
            }
            prop_assert!(f.d[i] >= u * scale * (1.0 - 1e-14));
        }
    }

    #[test]
    fn scalar_case(a in -1e4f64..1e4) {
        let m = SymmetricMatrix::new(1, vec![a]).unwrap();
        let f = gmw_factorize(&m, U).unwrap();
        prop_assert_eq!(f.d[0], (U * a.abs().max(1.0)).max(a.abs()));
    }
}
