//! Experiment files (TOML) and command line overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use smmala::kernel::{KernelKind, SamplerConfig};
use smmala::metric::{metric_fixed, MetricKind};
use smmala::targets::Link;
use smmala::SymmetricMatrix;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    PilotT4Fixed,
    PilotT4Adaptive,
    GaussianEnergyLaw,
    DimScaling,
    Garch,
    Binreg,
}

impl ExperimentId {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::PilotT4Fixed => "pilot-t4-fixed",
            ExperimentId::PilotT4Adaptive => "pilot-t4-adaptive",
            ExperimentId::GaussianEnergyLaw => "gaussian-energy-law",
            ExperimentId::DimScaling => "dim-scaling",
            ExperimentId::Garch => "garch",
            ExperimentId::Binreg => "binreg",
        }
    }

    fn runs_chain(self) -> bool {
        !matches!(self, ExperimentId::GaussianEnergyLaw | ExperimentId::DimScaling)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelName {
    AmhMala,
    AmhMalaEig,
    FixedSmmala,
    AdaptiveSmmalaFisher,
    Hmc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricName {
    Mchol,
    Eig,
    Fisher,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkName {
    Logit,
    Probit,
}

impl From<LinkName> for Link {
    fn from(l: LinkName) -> Self {
        match l {
            LinkName::Logit => Link::Logit,
            LinkName::Probit => Link::Probit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplerSection {
    pub gamma: f64,
    pub beta: f64,
    pub rho: f64,
    pub eps_bar: f64,
    pub u: f64,
    pub max_ls_iters: usize,
    pub eps_min: f64,
    pub metric: MetricName,
}

impl Default for SamplerSection {
    fn default() -> Self {
        let d = SamplerConfig::default();
        Self {
            gamma: d.gamma,
            beta: d.beta,
            rho: d.rho,
            eps_bar: d.eps_bar,
            u: d.u,
            max_ls_iters: d.max_ls_iters,
            eps_min: d.eps_min,
            metric: MetricName::Mchol,
        }
    }
}

/// Settings of the built-in data generators, used when `data` is absent.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SyntheticSection {
    /// `α₀, α₁, β, ν` on the natural scale.
    pub garch_params: Option<[f64; 4]>,
    pub length: Option<usize>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub data_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    pub seed: Option<u64>,
    pub kernel: Option<KernelName>,
    #[serde(default)]
    pub sampler: SamplerSection,
    pub n_iters: Option<usize>,
    #[serde(default)]
    pub n_burn: usize,
    pub init: Option<Vec<f64>>,
    /// Step size of `fixed_smmala` and `hmc`.
    pub eps: Option<f64>,
    pub n_leapfrog: Option<usize>,
    pub data: Option<PathBuf>,
    pub link: Option<LinkName>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub synthetic: SyntheticSection,
    /// Dimensions for `gaussian-energy-law` and `dim-scaling`.
    pub dims: Option<Vec<usize>>,
    /// Step sizes for `gaussian-energy-law`.
    pub step_sizes: Option<Vec<f64>>,
    /// Number of stationary `(x, w)` draws per setting.
    pub draws: Option<usize>,
}

/// Command line values that replace the file's.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub iters: Option<usize>,
    pub gamma: Option<f64>,
    pub eps_bar: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = Some(s);
        }
        if let Some(n) = o.iters {
            self.n_iters = Some(n);
        }
        if let Some(g) = o.gamma {
            self.sampler.gamma = g;
        }
        if let Some(e) = o.eps_bar {
            self.sampler.eps_bar = e;
        }
        if let Some(p) = &o.out {
            self.out = Some(p.clone());
        }
    }

    pub fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| CliError::config("seed is mandatory"))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("runs").join(self.experiment.name()))
    }

    pub fn n_iters(&self) -> Result<usize> {
        self.n_iters.ok_or_else(|| CliError::config("n_iters is required for this experiment"))
    }

    pub fn kernel_name(&self) -> KernelName {
        self.kernel.unwrap_or(match self.experiment {
            ExperimentId::PilotT4Fixed => KernelName::FixedSmmala,
            _ => KernelName::AmhMala,
        })
    }

    pub fn kernel_kind(&self) -> Result<KernelKind> {
        let eps = || self.eps.ok_or_else(|| CliError::config("eps is required for fixed_smmala and hmc"));
        Ok(match self.kernel_name() {
            KernelName::AmhMala => KernelKind::AmhMala,
            KernelName::AmhMalaEig => KernelKind::AmhMalaEig,
            KernelName::FixedSmmala => KernelKind::FixedSmmala { eps: eps()? },
            KernelName::AdaptiveSmmalaFisher => KernelKind::AdaptiveSmmalaFisher,
            KernelName::Hmc => KernelKind::Hmc {
                eps: eps()?,
                n_leapfrog: self.n_leapfrog.ok_or_else(|| CliError::config("n_leapfrog is required for hmc"))?,
            },
        })
    }

    /// Sampler configuration for a target of dimension `dim`.
    pub fn sampler_config(&self, dim: usize) -> Result<SamplerConfig> {
        let s = &self.sampler;
        let metric = match s.metric {
            MetricName::Mchol => MetricKind::ModifiedCholesky,
            MetricName::Eig => MetricKind::Eigen,
            MetricName::Fisher => MetricKind::Fisher,
            MetricName::Identity => {
                MetricKind::Fixed(metric_fixed(&SymmetricMatrix::identity(dim)).map_err(|e| CliError::config(e.to_string()))?)
            }
        };
        let cfg = SamplerConfig {
            gamma: s.gamma,
            beta: s.beta,
            rho: s.rho,
            eps_bar: s.eps_bar,
            u: s.u,
            max_ls_iters: s.max_ls_iters,
            eps_min: s.eps_min,
            metric,
        };
        cfg.validate().map_err(|e| CliError::config(e.to_string()))?;
        Ok(cfg)
    }

    /// Checks that do not need data.
    pub fn validate(&self) -> Result<()> {
        self.seed()?;
        if self.experiment.runs_chain() {
            self.n_iters()?;
            self.kernel_kind()?;
        }
        if matches!(self.experiment, ExperimentId::Binreg) && self.link.is_none() {
            return Err(CliError::config("binreg needs link = \"logit\" or \"probit\""));
        }
        if let Some(p) = &self.data {
            if !p.exists() {
                return Err(CliError::config(format!("data file {} does not exist", p.display())));
            }
        }
        self.sampler_config(1)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_pilot() {
        let c = ExperimentConfig::parse("experiment = \"pilot-t4-fixed\"\nseed = 3\nn_iters = 10\neps = 0.75\n").unwrap();
        c.validate().unwrap();
        assert_eq!(c.kernel_kind().unwrap(), KernelKind::FixedSmmala { eps: 0.75 });
        assert_eq!(c.out_dir(), PathBuf::from("runs/pilot-t4-fixed"));
    }

    #[test]
    fn seed_is_mandatory() {
        let c = ExperimentConfig::parse("experiment = \"pilot-t4-adaptive\"\nn_iters = 10\n").unwrap();
        assert!(matches!(c.validate(), Err(CliError::Config(m)) if m.contains("seed")));
    }

    #[test]
    fn overrides_win() {
        let mut c = ExperimentConfig::parse("experiment = \"garch\"\nseed = 1\nn_iters = 5\n[sampler]\ngamma = 1.5\n").unwrap();
        c.apply(&Overrides { seed: Some(9), iters: Some(7), gamma: Some(2.0), eps_bar: Some(0.5), out: None });
        assert_eq!((c.seed, c.n_iters, c.sampler.gamma, c.sampler.eps_bar), (Some(9), Some(7), 2.0, 0.5));
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        assert!(ExperimentConfig::parse("experiment = \"garch\"\nsed = 1\n").is_err());
        assert!(ExperimentConfig::parse("experiment = \"nope\"\n").is_err());
        let c = ExperimentConfig::parse("experiment = \"garch\"\nseed = 1\nn_iters = 5\n[sampler]\ngamma = 20.0\n").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn parse_errors_cite_the_line() {
        let e = ExperimentConfig::parse("experiment = \"garch\"\nseed = 1\nn_iters = \"many\"\n").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
    }
}
