mod common;

use common::*;
use rand::Rng;
use smmala::targets::{Gaussian, Link, StudentT, Target};
use smmala::SymmetricMatrix;

fn check<T: Target, R: Rng>(name: &str, t: &T, rng: &mut R, mut point: impl FnMut(&mut R) -> Vec<f64>) {
    for _ in 0..20 {
        let x = point(rng);
        let e = t.evaluate(&x).unwrap();
        assert!(e.is_valid(), "{name}: invalid at {x:?}");
        let g = rel_err(&e.grad, &fd_gradient(t, &x));
        let h = rel_err(e.hess.as_slice(), &fd_hessian(t, &x));
        assert!(g <= 1e-5, "{name}: gradient error {g:e} at {x:?}");
        assert!(h <= 1e-4, "{name}: Hessian error {h:e} at {x:?}");
    }
}

#[test]
fn gaussian_derivatives() {
    let cov = SymmetricMatrix::new(3, vec![2.0, 0.6, -0.3, 0.6, 1.0, 0.2, -0.3, 0.2, 0.5]).unwrap();
    let t = Gaussian::new(vec![1.0, -2.0, 0.5], &cov).unwrap();
    check("gaussian", &t, &mut rng(1), |r| (0..3).map(|_| r.random_range(-4.0..4.0)).collect());
}

#[test]
fn student_t_derivatives() {
    for nu in [1.0, 4.0, 30.0] {
        let t = StudentT::new(nu).unwrap();
        check("student-t", &t, &mut rng(2), |r| vec![r.random_range(-8.0..8.0)]);
    }
}

#[test]
fn garch_derivatives() {
    let t = garch_target(500, 3);
    let truth = garch_truth().to_transformed();
    check("garch", &t, &mut rng(4), |r| truth.iter().map(|v| v + r.random_range(-0.5..0.5)).collect());
}

#[test]
fn garch_derivatives_far_from_mode() {
    let t = garch_target(500, 5);
    check("garch-far", &t, &mut rng(6), |r| {
        vec![r.random_range(-11.0..-1.0), r.random_range(-4.0..-0.5), r.random_range(-4.0..-0.1), r.random_range(0.0..4.0)]
    });
}

#[test]
fn binreg_derivatives() {
    for link in [Link::Logit, Link::Probit] {
        let t = binreg_target(link, 7);
        check("binreg", &t, &mut rng(8), |r| (0..5).map(|_| r.random_range(-1.5..1.5)).collect());
    }
}

#[test]
fn fisher_is_expected_negative_hessian_for_logit() {
    let t = binreg_target(Link::Logit, 9);
    let x = [0.2, -0.1, 0.4, 0.0, 0.3];
    let f = t.fisher(&x).unwrap().unwrap();
    assert_eq!(f, t.evaluate(&x).unwrap().hess.negated());
}
