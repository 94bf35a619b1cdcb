//! Result files. Every float in a CSV carries 17 significant digits; JSON
//! uses the shortest representation that parses back to the same `f64`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use smmala::diagnostics::{EssReport, ProfileBin};
use smmala::kernel::Trace;

use crate::error::{CliError, Result};

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn trace_csv(trace: &Trace) -> String {
    let mut s = String::from("iter");
    for j in 1..=trace.dim {
        let _ = write!(s, ",x_{j}");
    }
    s.push_str(",eps_f,eps_b,delta_f,delta_b,accepted,ls_iters,grad_evals\n");
    for (i, r) in trace.records.iter().enumerate() {
        let _ = write!(s, "{}", trace.burn_in + i);
        for v in trace.position(i) {
            let _ = write!(s, ",{}", num(*v));
        }
        let _ = writeln!(
            s,
            ",{},{},{},{},{},{},{}",
            num(r.eps_f),
            num(r.eps_b),
            num(r.delta_f),
            num(r.delta_b),
            u8::from(r.accepted),
            r.ls_iters_f + r.ls_iters_b,
            r.grad_evals
        );
    }
    s
}

/// Plain numeric table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

pub fn profile_table(bins: &[ProfileBin]) -> Table {
    Table {
        file: "profile.csv",
        header: vec!["bin_lo", "bin_hi", "mean_eps_f", "count"],
        rows: bins.iter().map(|b| vec![b.lo, b.hi, b.mean_eps, b.count as f64]).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerEcho {
    pub gamma: f64,
    pub beta: f64,
    pub rho: f64,
    pub eps_bar: f64,
    pub u: f64,
    pub max_ls_iters: usize,
    pub eps_min: f64,
    pub metric: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssSummary {
    pub per_coordinate: Vec<f64>,
    pub degenerate: Vec<bool>,
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub iterations: usize,
    pub seconds: f64,
    pub grad_evals: usize,
    pub min_ess_per_second: Option<f64>,
    pub min_ess_per_grad_eval: Option<f64>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl From<&EssReport> for EssSummary {
    fn from(r: &EssReport) -> Self {
        Self {
            per_coordinate: r.per_coordinate.clone(),
            degenerate: r.degenerate.clone(),
            min: r.min,
            median: r.median,
            max: r.max,
            iterations: r.iterations,
            seconds: r.seconds,
            grad_evals: r.grad_evals,
            min_ess_per_second: finite(r.min_ess_per_second),
            min_ess_per_grad_eval: finite(r.min_ess_per_grad_eval),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub experiment: String,
    pub kernel: Option<String>,
    pub seed: u64,
    pub n_iters: usize,
    pub n_burn: usize,
    pub init: Option<Vec<f64>>,
    pub sampler: SamplerEcho,
    pub acceptance_rate: Option<f64>,
    pub ess: Option<EssSummary>,
    pub wall_seconds: f64,
    pub burn_in_grad_evals: usize,
    /// Experiment specific figures.
    pub metrics: BTreeMap<String, f64>,
}

impl Summary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Output { path: path.to_path_buf(), source })
}
