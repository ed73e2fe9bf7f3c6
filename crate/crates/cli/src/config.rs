//! Scenario configuration: a flat JSON object naming the network
//! parameters, the cluster-size sweep, and the simulation knobs.
//!
//! Unknown keys are a hard error so a typo in a physics parameter cannot
//! silently fall back to a default.

use std::path::{Path, PathBuf};

use edgeplan_core::{CacheModel, SimConfig, SystemParams};
use serde::Deserialize;

use crate::error::CliError;

/// A field that accepts either one number or a list (`analyze` sweeps the
/// cartesian product of `beta` and `lambda`; other commands need scalars).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Values {
    One(f64),
    Many(Vec<f64>),
}

impl Values {
    pub fn as_slice(&self) -> &[f64] {
        match self {
            Values::One(v) => std::slice::from_ref(v),
            Values::Many(vs) => vs,
        }
    }

    pub fn scalar(&self, name: &str) -> Result<f64, CliError> {
        match self.as_slice() {
            [v] => Ok(*v),
            other => Err(CliError::InvalidConfig(format!(
                "{name} must be a single value for this command, got {} values",
                other.len()
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheModelChoice {
    #[default]
    Fractional,
    WholeFile,
}

impl From<CacheModelChoice> for CacheModel {
    fn from(choice: CacheModelChoice) -> Self {
        match choice {
            CacheModelChoice::Fractional => CacheModel::Fractional,
            CacheModelChoice::WholeFile => CacheModel::WholeFile,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Cache ratio, in `[0, 1]`.
    pub mu: f64,
    /// Cloud-BS rate exponent.
    pub gamma: f64,
    /// EH-BS rate exponent; a list sweeps one curve per value.
    pub lambda: Values,
    /// BS-user rate exponent; a list sweeps one curve per value.
    pub beta: Values,
    /// Cooperation reach (odd).
    pub coop_reach: u32,
    /// Pin a single cluster size instead of a sweep range.
    #[serde(default)]
    pub cluster_size: Option<u32>,
    /// Sweep lower bound; defaults to `cluster_size`, else `coop_reach`.
    #[serde(default)]
    pub m_min: Option<u32>,
    /// Sweep upper bound; defaults to `cluster_size`, else `m_min + 10`.
    #[serde(default)]
    pub m_max: Option<u32>,
    #[serde(default = "defaults::n_files")]
    pub n_files: u32,
    #[serde(default = "defaults::file_length")]
    pub file_length: u64,
    #[serde(default = "defaults::power")]
    pub power: f64,
    #[serde(default = "defaults::trials")]
    pub trials: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub cache_model: CacheModelChoice,
    /// Default output path; the `--out` flag overrides it.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

mod defaults {
    pub fn n_files() -> u32 {
        500
    }
    pub fn file_length() -> u64 {
        1_000_000
    }
    pub fn power() -> f64 {
        20.0
    }
    pub fn trials() -> u32 {
        1_000
    }
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::InvalidConfig(format!("{}: {e}", path.display())))
    }

    pub fn system_params(&self, lambda: f64, beta: f64) -> Result<SystemParams, CliError> {
        Ok(SystemParams::new(
            self.mu,
            self.gamma,
            lambda,
            beta,
            self.coop_reach,
        )?)
    }

    /// The single parameter set for commands that do not sweep rates.
    pub fn scalar_params(&self) -> Result<SystemParams, CliError> {
        let lambda = self.lambda.scalar("lambda")?;
        let beta = self.beta.scalar("beta")?;
        self.system_params(lambda, beta)
    }

    /// Resolved cluster-size sweep `[m_min, m_max]`.
    pub fn sweep(&self) -> Result<(u32, u32), CliError> {
        let lo = self
            .m_min
            .or(self.cluster_size)
            .unwrap_or(self.coop_reach);
        let hi = self.m_max.or(self.cluster_size).unwrap_or(lo + 10);
        if lo < self.coop_reach {
            return Err(CliError::InvalidConfig(format!(
                "m_min {lo} is below coop_reach {}",
                self.coop_reach
            )));
        }
        if hi < lo {
            return Err(CliError::InvalidConfig(format!(
                "m_max {hi} is below m_min {lo}"
            )));
        }
        Ok((lo, hi))
    }

    pub fn sim_config(&self, params: SystemParams, cluster_size: u32) -> SimConfig {
        SimConfig {
            params,
            cluster_size,
            n_files: self.n_files,
            file_length: self.file_length,
            power: self.power,
            trials: self.trials,
            seed: self.seed,
            cache_model: self.cache_model.into(),
        }
    }
}
