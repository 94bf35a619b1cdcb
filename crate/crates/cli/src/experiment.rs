//! The experiments a config file can request.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use smmala::diagnostics::{acceptance_rate, max_stick_run, mean_estimate, step_size_profile, EssReport};
use smmala::kernel::{adaptive_step, energy_error, run_chain, SamplerConfig, Trace};
use smmala::metric::MetricKind;
use smmala::rng::{chain_rng, standard_normal_vec};
use smmala::targets::{
    simulate_binreg, simulate_garch, BinaryRegression, GarchParams, GarchPrior, GarchT, Gaussian, StudentT, Target,
};

use crate::config::{ExperimentConfig, ExperimentId};
use crate::data::{read_binary, read_returns};
use crate::error::{from_sampler, CliError, Result};
use crate::output::{profile_table, trace_csv, write_file, EssSummary, SamplerEcho, Summary, Table};

/// Synthetic percent-scale returns: `α₀ = 0.01, α₁ = 0.15, β = 0.8, ν = 5`.
pub const DEFAULT_GARCH_PARAMS: [f64; 4] = [0.01, 0.15, 0.8, 5.0];
pub const DEFAULT_GARCH_LENGTH: usize = 1974;
/// Deliberately poor starting point `(log α₀, log α₁, log β, log(ν - 2))`.
pub fn default_garch_init() -> Vec<f64> {
    vec![-10.0, -1.0, -3.0, 18f64.ln()]
}

/// Region where the t₄ pilot is checked for stuck episodes.
pub fn inflection_region(x: &[f64]) -> bool {
    x[0].abs() > 1.7 && x[0].abs() < 2.3
}

/// Bin edges of width 0.5 centered on multiples of 0.5 in `[-5, 5]`.
pub fn profile_edges() -> Vec<f64> {
    (0..=21).map(|k| -5.25 + 0.5 * k as f64).collect()
}

/// Everything an experiment produced, before anything is written.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub summary: Summary,
    pub trace: Option<Trace>,
    pub tables: Vec<Table>,
}

impl Outcome {
    /// Write the artifacts into `dir` and return the paths written.
    pub fn write(&self, dir: &std::path::Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Output { path: dir.to_path_buf(), source })?;
        let mut files = Vec::new();
        if let Some(t) = &self.trace {
            let p = dir.join("trace.csv");
            write_file(&p, &trace_csv(t))?;
            files.push(p);
        }
        for t in &self.tables {
            let p = dir.join(t.file);
            write_file(&p, &t.to_csv())?;
            files.push(p);
        }
        let p = dir.join("summary.json");
        write_file(&p, &self.summary.to_json())?;
        files.push(p);
        Ok(files)
    }
}

/// Validate, run and write. Returns the outcome and the files written.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<(Outcome, Vec<PathBuf>)> {
    let outcome = execute(cfg)?;
    let files = outcome.write(&cfg.out_dir())?;
    Ok((outcome, files))
}

pub fn execute(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentId::PilotT4Fixed | ExperimentId::PilotT4Adaptive => pilot(cfg),
        ExperimentId::GaussianEnergyLaw => energy_law(cfg),
        ExperimentId::DimScaling => dim_scaling(cfg),
        ExperimentId::Garch => garch(cfg),
        ExperimentId::Binreg => binreg(cfg),
    }
}

fn echo(cfg: &SamplerConfig) -> SamplerEcho {
    SamplerEcho {
        gamma: cfg.gamma,
        beta: cfg.beta,
        rho: cfg.rho,
        eps_bar: cfg.eps_bar,
        u: cfg.u,
        max_ls_iters: cfg.max_ls_iters,
        eps_min: cfg.eps_min,
        metric: match cfg.metric {
            MetricKind::ModifiedCholesky => "mchol",
            MetricKind::Eigen => "eig",
            MetricKind::Fisher => "fisher",
            MetricKind::Fixed(_) => "identity",
        }
        .to_string(),
    }
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let k = v.len();
    Some(if k % 2 == 1 { v[k / 2] } else { 0.5 * (v[k / 2 - 1] + v[k / 2]) })
}

/// Run the configured chain on `target` and fill in the common summary fields.
fn chain_outcome<T: Target>(cfg: &ExperimentConfig, target: &T, init: Vec<f64>) -> Result<(Outcome, Trace)> {
    let seed = cfg.seed()?;
    let kind = cfg.kernel_kind()?;
    let sampler = cfg.sampler_config(target.dim())?;
    let n_iters = cfg.n_iters()?;
    let start = Instant::now();
    let trace = run_chain(target, &kind, &sampler, n_iters, cfg.n_burn, seed, &init).map_err(from_sampler)?;
    let seconds = start.elapsed().as_secs_f64();
    let ess = if trace.len() >= 10 {
        Some(EssSummary::from(&EssReport::from_trace(&trace, seconds).map_err(CliError::Numerical)?))
    } else {
        None
    };
    let summary = Summary {
        experiment: cfg.experiment.name().to_string(),
        kernel: Some(kind.name().to_string()),
        seed,
        n_iters,
        n_burn: cfg.n_burn,
        init: Some(init),
        sampler: echo(&trace.config),
        acceptance_rate: acceptance_rate(&trace).ok(),
        ess,
        wall_seconds: seconds,
        burn_in_grad_evals: trace.burn_in_grad_evals,
        metrics: BTreeMap::new(),
    };
    Ok((Outcome { summary, trace: None, tables: Vec::new() }, trace))
}

fn init_or(cfg: &ExperimentConfig, dim: usize, default: Vec<f64>) -> Result<Vec<f64>> {
    let init = cfg.init.clone().unwrap_or(default);
    if init.len() != dim {
        return Err(CliError::config(format!("init has {} entries, the target has dimension {dim}", init.len())));
    }
    Ok(init)
}

fn pilot(cfg: &ExperimentConfig) -> Result<Outcome> {
    let target = StudentT::new(4.0).map_err(CliError::Model)?;
    let init = init_or(cfg, 1, vec![0.0])?;
    let (mut out, trace) = chain_outcome(cfg, &target, init)?;
    let n = trace.len().max(1) as f64;
    let occupancy = trace.coordinate(0).iter().filter(|v| v.abs() > 1.8 && v.abs() < 2.2).count() as f64 / n;
    let bins = step_size_profile(&trace, &profile_edges());
    let m = &mut out.summary.metrics;
    m.insert("max_stick_run_1.7_2.3".into(), max_stick_run(&trace, inflection_region) as f64);
    m.insert("max_stick_run".into(), max_stick_run(&trace, |_| true) as f64);
    m.insert("occupancy_1.8_2.2".into(), occupancy);
    for b in &bins {
        let center = 0.5 * (b.lo + b.hi);
        if center == 0.0 {
            m.insert("mean_eps_f_at_0".into(), b.mean_eps);
        } else if center == 2.0 {
            m.insert("mean_eps_f_at_2".into(), b.mean_eps);
        }
    }
    out.tables.push(profile_table(&bins));
    out.trace = Some(trace);
    Ok(out)
}

fn no_chain_summary(cfg: &ExperimentConfig, sampler: &SamplerConfig, draws: usize, seconds: f64) -> Result<Summary> {
    Ok(Summary {
        experiment: cfg.experiment.name().to_string(),
        kernel: None,
        seed: cfg.seed()?,
        n_iters: draws,
        n_burn: 0,
        init: None,
        sampler: echo(sampler),
        acceptance_rate: None,
        ess: None,
        wall_seconds: seconds,
        burn_in_grad_evals: 0,
        metrics: BTreeMap::new(),
    })
}

/// Stationary draws `x ~ N(0, I_d)`, `w ~ N(0, I_d)` and the metric of `N(0, I_d)`.
struct GaussianDraws {
    target: Gaussian,
    metric: smmala::MetricTensor,
    rng: smmala::rng::ChainRng,
}

impl GaussianDraws {
    fn new(d: usize, sampler: &SamplerConfig, seed: u64, stream: u64) -> Result<Self> {
        let target = Gaussian::standard(d);
        let x0 = vec![0.0; d];
        let e0 = target.evaluate(&x0).map_err(CliError::Numerical)?;
        let metric = sampler.metric_at(&target, &x0, &e0).map_err(from_sampler)?;
        Ok(Self { target, metric, rng: chain_rng(seed, stream) })
    }

    fn next(&mut self) -> Result<(Vec<f64>, Vec<f64>, smmala::TargetEval)> {
        let d = self.target.dim();
        let x = standard_normal_vec(&mut self.rng, d);
        let w = standard_normal_vec(&mut self.rng, d);
        let e = self.target.evaluate(&x).map_err(CliError::Numerical)?;
        Ok((x, w, e))
    }
}

/// Mean energy error of one trial step against two candidate laws.
pub fn energy_law_table(dims: &[usize], step_sizes: &[f64], draws: usize, sampler: &SamplerConfig, seed: u64) -> Result<Table> {
    let mut rows = Vec::new();
    let mut stream = 0;
    for &d in dims {
        for &eps in step_sizes {
            let mut g = GaussianDraws::new(d, sampler, seed, stream)?;
            stream += 1;
            let mut deltas = Vec::with_capacity(draws);
            for _ in 0..draws {
                let (x, w, e) = g.next()?;
                deltas.push(energy_error(&g.target, eps, &x, &w, &e, &g.metric).map_err(CliError::Numerical)?.delta);
            }
            let m = mean_estimate(&deltas).map_err(CliError::Numerical)?;
            let df = d as f64;
            let quartic = df * (eps.powi(4) / 4.0 - eps.powi(6) / 32.0);
            let sixth = -df * eps.powi(6) / 32.0;
            rows.push(vec![
                df,
                eps,
                m.mean,
                m.std_error,
                quartic,
                (m.mean - quartic) / m.std_error,
                sixth,
                (m.mean - sixth) / m.std_error,
            ]);
        }
    }
    Ok(Table {
        file: "energy_law.csv",
        header: vec!["d", "eps", "mean_delta", "std_error", "law_quartic", "z_quartic", "law_sixth", "z_sixth"],
        rows,
    })
}

fn energy_law(cfg: &ExperimentConfig) -> Result<Outcome> {
    let dims = cfg.dims.clone().unwrap_or_else(|| vec![1, 5, 25]);
    let steps = cfg.step_sizes.clone().unwrap_or_else(|| vec![0.5, 1.0]);
    let draws = cfg.draws.unwrap_or(100_000);
    let sampler = cfg.sampler_config(1)?;
    let start = Instant::now();
    let table = energy_law_table(&dims, &steps, draws, &sampler, cfg.seed()?)?;
    let mut summary = no_chain_summary(cfg, &sampler, draws, start.elapsed().as_secs_f64())?;
    let max_abs = |name| table.column(name).unwrap().iter().fold(0.0f64, |m, z| m.max(z.abs()));
    summary.metrics.insert("max_abs_z_quartic".into(), max_abs("z_quartic"));
    summary.metrics.insert("max_abs_z_sixth".into(), max_abs("z_sixth"));
    Ok(Outcome { summary, trace: None, tables: vec![table] })
}

/// Median and mean adaptive step over stationary draws on `N(0, I_d)`.
pub fn dim_scaling_table(dims: &[usize], draws: usize, sampler: &SamplerConfig, seed: u64) -> Result<Table> {
    let mut rows = Vec::new();
    for (k, &d) in dims.iter().enumerate() {
        let mut g = GaussianDraws::new(d, sampler, seed, k as u64)?;
        let mut eps = Vec::with_capacity(draws);
        for _ in 0..draws {
            let (x, w, e) = g.next()?;
            eps.push(adaptive_step(&g.target, &x, &w, &e, &g.metric, sampler).map_err(CliError::Numerical)?.eps);
        }
        let mean = eps.iter().sum::<f64>() / eps.len().max(1) as f64;
        let med = median(eps).ok_or_else(|| CliError::config("draws must be positive"))?;
        rows.push(vec![d as f64, med, mean]);
    }
    Ok(Table { file: "dim_scaling.csv", header: vec!["d", "median_eps", "mean_eps"], rows })
}

/// Least squares slope of `ln y` on `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn dim_scaling(cfg: &ExperimentConfig) -> Result<Outcome> {
    let dims = cfg.dims.clone().unwrap_or_else(|| vec![1, 16, 256]);
    let draws = cfg.draws.unwrap_or(2000);
    let sampler = cfg.sampler_config(1)?;
    let start = Instant::now();
    let table = dim_scaling_table(&dims, draws, &sampler, cfg.seed()?)?;
    let mut summary = no_chain_summary(cfg, &sampler, draws, start.elapsed().as_secs_f64())?;
    if dims.len() >= 2 {
        let slope = log_log_slope(&table.column("d").unwrap(), &table.column("median_eps").unwrap());
        summary.metrics.insert("log_log_slope".into(), slope);
    }
    Ok(Outcome { summary, trace: None, tables: vec![table] })
}

fn garch(cfg: &ExperimentConfig) -> Result<Outcome> {
    let data = match &cfg.data {
        Some(p) => read_returns(p)?,
        None => {
            let [alpha0, alpha1, beta, nu] = cfg.synthetic.garch_params.unwrap_or(DEFAULT_GARCH_PARAMS);
            let params = GarchParams { alpha0, alpha1, beta, nu };
            let len = cfg.synthetic.length.unwrap_or(DEFAULT_GARCH_LENGTH);
            simulate_garch(&params, len, cfg.synthetic.data_seed.unwrap_or(1)).map_err(|e| CliError::config(e.to_string()))?
        }
    };
    let target = GarchT::new(data, GarchPrior::default()).map_err(CliError::Model)?;
    let init = init_or(cfg, 4, default_garch_init())?;
    let (mut out, trace) = chain_outcome(cfg, &target, init)?;
    let eps: Vec<f64> = trace.records.iter().map(|r| r.eps_f).collect();
    let m = &mut out.summary.metrics;
    m.insert("accepted_moves".into(), trace.records.iter().filter(|r| r.accepted).count() as f64);
    if let Some(v) = median(eps.iter().take(200).copied().collect()) {
        m.insert("median_eps_f_first_200".into(), v);
    }
    if let Some(v) = median(eps.iter().skip(1000).copied().collect()) {
        m.insert("median_eps_f_after_1000".into(), v);
    }
    out.trace = Some(trace);
    Ok(out)
}

fn binreg(cfg: &ExperimentConfig) -> Result<Outcome> {
    let link = cfg.link.ok_or_else(|| CliError::config("binreg needs a link"))?.into();
    let data = match &cfg.data {
        Some(p) => read_binary(p)?,
        None => simulate_binreg(
            cfg.synthetic.n.unwrap_or(200),
            cfg.synthetic.d.unwrap_or(5),
            link,
            cfg.synthetic.data_seed.unwrap_or(1),
        )
        .map_err(|e| CliError::config(e.to_string()))?,
    };
    let d = data.d();
    let target = BinaryRegression::new(data, link);
    let init = init_or(cfg, d, vec![0.0; d])?;
    let (mut out, trace) = chain_outcome(cfg, &target, init)?;
    out.trace = Some(trace);
    Ok(out)
}
