//! Experiment configuration, read from TOML.

use std::fmt;
use std::str::FromStr;

use clique_oracle::GeneratorKind;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// k-dominating set by partition search.
    Kds,
    /// k-independent set by partition search.
    Kis,
    /// k-independent set through the reduction to dominating set.
    KisViaDs,
    /// k-vertex cover.
    Kvc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Kds, Algorithm::Kis, Algorithm::KisViaDs, Algorithm::Kvc];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Kds => "kds",
            Algorithm::Kis => "kis",
            Algorithm::KisViaDs => "kis-via-ds",
            Algorithm::Kvc => "kvc",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected kds, kis, kis-via-ds or kvc)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown format `{s}` (expected json or csv)")),
        }
    }
}

fn default_repetitions() -> usize {
    1
}

/// Default `c` in the partition-search round ceiling `c k n^(1 - 1/k)`.
pub const ROUND_CONSTANT: f64 = 4.0;

fn default_round_constant() -> f64 {
    ROUND_CONSTANT
}

/// One experiment: run `algorithm` with parameter `k` on `repetitions`
/// generated graphs for every `n` in `schedule`. Repetition `r` uses the
/// generator seed `seed + r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub k: usize,
    pub schedule: Vec<usize>,
    pub generator: GeneratorKind,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub format: OutputFormat,
    /// `c` in the round ceiling `c k n^(1 - 1/k)` for the partition searches.
    #[serde(default = "default_round_constant")]
    pub round_constant: f64,
    /// Engine timeout override.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<usize>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let err = |m: &str| Err(CliError::Config(m.into()));
        if self.schedule.is_empty() {
            return err("field `schedule`: must list at least one n");
        }
        if let Some(&n) = self.schedule.iter().find(|&&n| n < 2) {
            return Err(CliError::Config(format!("field `schedule`: n = {n} is below 2")));
        }
        if self.repetitions == 0 {
            return err("field `repetitions`: must be at least 1");
        }
        if self.k == 0 {
            return err("field `k`: must be at least 1");
        }
        if !(self.round_constant > 0.0 && self.round_constant.is_finite()) {
            return err("field `round_constant`: must be positive");
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
