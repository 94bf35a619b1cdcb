//! Gill–Murray–Wright modified Cholesky factorization.
//!
//! Square-root free, left-looking. For a symmetric `A` and scale `u` it finds
//! unit lower-triangular `L̃` and positive diagonal `D` with
//! `L̃ D L̃ᵀ = A + J`, `J` diagonal and non-negative. Two bounds steer the
//! choice of each `D[j]`:
//!
//! * `D[j] >= δ = u · max(ν, ξ, 1)`;
//! * `|L̃[k, j]| · sqrt(D[j]) <= φ` with `φ² = max(ν, ξ / sqrt(d² - 1), u)`,
//!
//! where `ν` and `ξ` are the largest absolute diagonal and off-diagonal
//! entries of `A`. When `A` is sufficiently positive definite neither bound
//! binds, `J = 0`, and the arithmetic is identical to [`cholesky`].

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{LowerTriangular, SymmetricMatrix};
use crate::math::{ln, sqrt};
use crate::{Error, Result};

/// Output of [`gmw_factorize`] and [`cholesky`].
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationResult {
    /// `L̃`, unit lower triangular.
    pub unit_lower: LowerTriangular,
    /// `D`, strictly positive.
    pub d: Vec<f64>,
    /// `L = L̃ D^{1/2}`.
    pub factor: LowerTriangular,
    /// Diagonal of `J`.
    pub perturbation: Vec<f64>,
    /// `Σ log D[j]`, i.e. `log det(A + J)`.
    pub logdet: f64,
}

impl FactorizationResult {
    /// `L̃ D L̃ᵀ`, i.e. `A + J` up to round-off.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        let n = self.d.len();
        let l = &self.unit_lower;
        SymmetricMatrix::from_lower_fn(n, |i, j| (0..=j).map(|k| l.get(i, k) * self.d[k] * l.get(j, k)).sum())
            .expect("finite factors")
    }
}

struct Bounds {
    delta: f64,
    phi_sq: f64,
}

/// Modified Cholesky factorization with scale factor `u` (`0 < u < 1`).
pub fn gmw_factorize(a: &SymmetricMatrix, u: f64) -> Result<FactorizationResult> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::param("scale factor u must lie in (0, 1)"));
    }
    let d = a.dim() as f64;
    let nu = a.max_abs_diagonal();
    let xi = a.max_abs_off_diagonal();
    let phi_sq = if a.dim() == 1 {
        // no off-diagonal entries, the ξ term is dropped
        nu.max(u)
    } else {
        nu.max(xi / sqrt(d * d - 1.0)).max(u)
    };
    let delta = u * nu.max(xi).max(1.0);
    ldl(a, Some(Bounds { delta, phi_sq }))
}

/// Plain Cholesky factorization through the same square-root free recursion.
/// Fails when a pivot is not strictly positive.
pub fn cholesky(a: &SymmetricMatrix) -> Result<FactorizationResult> {
    ldl(a, None)
}

fn ldl(a: &SymmetricMatrix, bounds: Option<Bounds>) -> Result<FactorizationResult> {
    let n = a.dim();
    // lt holds L̃; column j below the diagonal carries D[j] · L̃[.., j] until
    // row k is normalized at the start of iteration k.
    let mut lt = vec![0.0; n * n];
    for i in 0..n {
        lt[i * n + i] = 1.0;
    }
    let mut dd: Vec<f64> = (0..n).map(|j| a.get(j, j)).collect();
    let mut perturbation = vec![0.0; n];

    for j in 0..n {
        for k in 0..j {
            lt[j * n + k] /= dd[k];
        }
        for i in j + 1..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= lt[i * n + k] * lt[j * n + k];
            }
            lt[i * n + j] = v;
        }
        match &bounds {
            Some(b) => {
                let theta = (j + 1..n).map(|i| lt[i * n + j].abs()).fold(0.0, f64::max);
                let before = dd[j];
                let after = b.delta.max(before.abs()).max(theta * theta / b.phi_sq);
                perturbation[j] = after - before;
                dd[j] = after;
            }
            None => {
                if !(dd[j] > 0.0) {
                    return Err(Error::NotPositiveDefinite { index: j, pivot: dd[j] });
                }
            }
        }
        for i in j + 1..n {
            let c = lt[i * n + j];
            dd[i] -= c * c / dd[j];
        }
    }

    let mut factor = vec![0.0; n * n];
    let roots: Vec<f64> = dd.iter().map(|&v| sqrt(v)).collect();
    for i in 0..n {
        for j in 0..=i {
            factor[i * n + j] = lt[i * n + j] * roots[j];
        }
    }
    let logdet = dd.iter().map(|&v| ln(v)).sum();
    Ok(FactorizationResult {
        unit_lower: LowerTriangular::from_raw(n, lt),
        d: dd,
        factor: LowerTriangular::from_raw(n, factor),
        perturbation,
        logdet,
    })
}
