//! Adaptive step size simplified manifold MALA.
//!
//! The sampler preconditions a Langevin proposal with a position specific
//! metric tensor built from the negative Hessian of the log target. Where
//! the Hessian is indefinite the metric comes from a Gill–Murray–Wright
//! modified Cholesky factorization (or from eigenvalue flooring). The step
//! size is chosen per iteration by a backtracking search on the energy error
//! of a single leapfrog trial step, randomized by an auxiliary Gaussian
//! momentum so the chain keeps `π(x)` as its invariant distribution.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, timing and
//! the command line runner live in the `smmala-cli` crate.
//!
//! ```ignore
//! use smmala::kernel::{run_chain, KernelKind, SamplerConfig};
//! use smmala::targets::StudentT;
//!
//! let target = StudentT::new(4.0).unwrap();
//! let cfg = SamplerConfig::default();
//! let trace = run_chain(&target, &KernelKind::AmhMala, &cfg, 500, 0, 7, &[0.0]).unwrap();
//! assert_eq!(trace.len(), 500);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diagnostics;
mod error;
pub mod kernel;
pub mod linalg;
mod math;
pub mod mcholesky;
pub mod metric;
pub mod rng;
pub mod targets;

pub use error::{Error, Result};
pub use linalg::{LowerTriangular, SymmetricMatrix};
pub use mcholesky::{gmw_factorize, FactorizationResult};
pub use metric::{MetricKind, MetricTensor};
pub use targets::{Target, TargetEval};
