//! Bayesian binary response regression, `P(y_i = 1) = ρ((Xβ)_i)`,
//! `β ~ N(0, 100 I)`, with logistic or probit inverse link.

use alloc::vec::Vec;

use super::{check_dim, Target, TargetEval};
use crate::linalg::{dot, SymmetricMatrix};
use crate::math::{ln_norm_cdf, logistic, logistic_variance, mills_ratio, softplus};
use crate::rng::{chain_rng, standard_normal, uniform};
use crate::{Error, Result};

const PRIOR_VARIANCE: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    Logit,
    Probit,
}

/// Design matrix `X` (`n × d`, row-major) and binary responses.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryData {
    n: usize,
    d: usize,
    x: Vec<f64>,
    y: Vec<bool>,
}

impl BinaryData {
    pub fn new(d: usize, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::data("design matrix needs at least one column"));
        }
        let n = y.len();
        if x.len() != n * d {
            return Err(Error::DimensionMismatch { expected: n * d, found: x.len() });
        }
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        let y = y
            .iter()
            .enumerate()
            .map(|(i, &v)| match v {
                v if v == 0.0 => Ok(false),
                v if v == 1.0 => Ok(true),
                _ => Err(Error::data(alloc::format!("response {i} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, d, x, y })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }

    pub fn response(&self, i: usize) -> bool {
        self.y[i]
    }
}

#[derive(Debug, Clone)]
pub struct BinaryRegression {
    data: BinaryData,
    link: Link,
}

impl BinaryRegression {
    pub fn new(data: BinaryData, link: Link) -> Self {
        Self { data, link }
    }

    pub fn link(&self) -> Link {
        self.link
    }

    pub fn data(&self) -> &BinaryData {
        &self.data
    }

    /// `Xᵀ diag(w) X + I/100`.
    fn weighted_gram(&self, weights: &[f64]) -> Result<SymmetricMatrix> {
        let d = self.data.d;
        let mut acc = alloc::vec![0.0; d * d];
        for (i, &w) in weights.iter().enumerate() {
            let row = self.data.row(i);
            for a in 0..d {
                let wa = w * row[a];
                for b in 0..=a {
                    acc[a * d + b] += wa * row[b];
                }
            }
        }
        SymmetricMatrix::from_lower_fn(d, |a, b| {
            let v = acc[a * d + b];
            if a == b {
                v + 1.0 / PRIOR_VARIANCE
            } else {
                v
            }
        })
    }

    fn linear_predictor(&self, beta: &[f64]) -> Vec<f64> {
        (0..self.data.n).map(|i| dot(self.data.row(i), beta)).collect()
    }

    /// Fisher weights `ρ'(η)² / (ρ(η)(1 - ρ(η)))`.
    fn fisher_weight(&self, eta: f64) -> f64 {
        match self.link {
            Link::Logit => logistic_variance(eta),
            // φ²/(Φ(η)Φ(-η)) = λ(η) λ(-η) with λ the inverse Mills ratio
            Link::Probit => mills_ratio(eta) * mills_ratio(-eta),
        }
    }
}

impl Target for BinaryRegression {
    fn dim(&self) -> usize {
        self.data.d
    }

    fn evaluate(&self, beta: &[f64]) -> Result<TargetEval> {
        check_dim(self.data.d, beta)?;
        let eta = self.linear_predictor(beta);
        let mut log_kernel = -dot(beta, beta) / (2.0 * PRIOR_VARIANCE);
        let mut grad: Vec<f64> = beta.iter().map(|b| -b / PRIOR_VARIANCE).collect();
        let mut weights = alloc::vec![0.0; self.data.n];
        for (i, &e) in eta.iter().enumerate() {
            let yi = self.data.y[i];
            // (log-likelihood, first derivative, minus second derivative) in η
            let (ll, s1, w) = match self.link {
                Link::Logit => {
                    let ll = if yi { -softplus(-e) } else { -softplus(e) };
                    let r = logistic(e);
                    let s1 = if yi { 1.0 - r } else { -r };
                    (ll, s1, logistic_variance(e))
                }
                Link::Probit => {
                    if yi {
                        let lam = mills_ratio(e);
                        (ln_norm_cdf(e), lam, lam * (e + lam))
                    } else {
                        let lam = mills_ratio(-e);
                        (ln_norm_cdf(-e), -lam, lam * (lam - e))
                    }
                }
            };
            log_kernel += ll;
            let row = self.data.row(i);
            for (g, x) in grad.iter_mut().zip(row) {
                *g += s1 * x;
            }
            weights[i] = w;
        }
        let hess = self.weighted_gram(&weights)?.negated();
        Ok(TargetEval { log_kernel, grad, hess })
    }

    fn fisher(&self, beta: &[f64]) -> Option<Result<SymmetricMatrix>> {
        Some(check_dim(self.data.d, beta).and_then(|_| {
            let w: Vec<f64> = self.linear_predictor(beta).iter().map(|&e| self.fisher_weight(e)).collect();
            self.weighted_gram(&w)
        }))
    }
}

/// Synthetic data set: an intercept column plus `d - 1` standard normal
/// covariates, responses drawn from the model at a fixed coefficient vector
/// `β_j = (-1)^j · 0.5 / (1 + j/2)`.
pub fn simulate_binreg(n: usize, d: usize, link: Link, seed: u64) -> Result<BinaryData> {
    if d == 0 {
        return Err(Error::param("need at least one column"));
    }
    let mut rng = chain_rng(seed, 0);
    let beta: Vec<f64> = (0..d).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * 0.5 / (1.0 + j as f64 / 2.0)).collect();
    let mut x = Vec::with_capacity(n * d);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let start = x.len();
        x.push(1.0);
        for _ in 1..d {
            x.push(standard_normal(&mut rng));
        }
        let eta = dot(&x[start..], &beta);
        let p = match link {
            Link::Logit => logistic(eta),
            Link::Probit => crate::math::exp(ln_norm_cdf(eta)),
        };
        y.push(if uniform(&mut rng) < p { 1.0 } else { 0.0 });
    }
    BinaryData::new(d, x, y)
}
