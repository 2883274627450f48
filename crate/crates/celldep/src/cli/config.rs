//! Run configuration: a single JSON document with defaults matching the
//! reference operating points (alpha = 1, eta = 3.5, six 802.11g rates with
//! the minimum-rate row at -90 dBm).

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::radio::{RadioError, RadioParams, RateRow, RateTable};

#[derive(Debug)]
pub enum ConfigError {
    Io(std::io::Error),
    /// JSON syntax or type error, with line/column diagnostics.
    Parse(serde_json::Error),
    /// A structurally valid config that violates a model invariant.
    Invalid(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(e) => write!(f, "cannot read config: {e}"),
            ConfigError::Parse(e) => write!(
                f,
                "config parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ),
            ConfigError::Invalid(msg) => write!(f, "invalid config: {msg}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl From<RadioError> for ConfigError {
    fn from(e: RadioError) -> Self {
        ConfigError::Invalid(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Markdown,
}

/// How the minimum-rate sensitivity is chosen: from the lowest-rate table
/// row, or pinned explicitly in dBm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PminRule {
    Rule(PminKeyword),
    ExplicitDbm(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PminKeyword {
    #[serde(rename = "minimum-rate")]
    MinimumRate,
}

impl Default for PminRule {
    fn default() -> Self {
        PminRule::Rule(PminKeyword::MinimumRate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateRowConfig {
    pub rate_mbps: f64,
    pub sensitivity_dbm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct McSection {
    pub samples: u64,
    pub seed: u64,
    pub workers: u32,
}

impl Default for McSection {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 42,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub rates: Vec<RateRowConfig>,
    pub alpha: f64,
    pub eta: f64,
    pub pmin: PminRule,
    pub mc: McSection,
    pub grid_n: u32,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            rates: default_rates(),
            alpha: 1.0,
            eta: 3.5,
            pmin: PminRule::default(),
            mc: McSection::default(),
            grid_n: 512,
            format: OutputFormat::default(),
        }
    }
}

/// The reference six-rate 802.11g operating points.
fn default_rates() -> Vec<RateRowConfig> {
    [
        (54.0, -44.0),
        (48.0, -60.0),
        (36.0, -69.0),
        (24.0, -73.0),
        (12.0, -85.0),
        (1.0, -90.0),
    ]
    .into_iter()
    .map(|(rate_mbps, sensitivity_dbm)| RateRowConfig {
        rate_mbps,
        sensitivity_dbm,
    })
    .collect()
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(ConfigError::Io)?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(ConfigError::Parse)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every invariant the downstream modules rely on, naming the
    /// violated one.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.rate_table()?;
        if self.alpha.is_nan() || self.alpha < 1.0 {
            return Err(ConfigError::Invalid(format!(
                "alpha must be >= 1, got {}",
                self.alpha
            )));
        }
        if self.eta.is_nan() || self.eta <= 0.0 {
            return Err(ConfigError::Invalid(format!(
                "eta must be > 0, got {}",
                self.eta
            )));
        }
        if self.mc.samples == 0 {
            return Err(ConfigError::Invalid("mc.samples must be >= 1".into()));
        }
        if self.mc.workers == 0 {
            return Err(ConfigError::Invalid("mc.workers must be >= 1".into()));
        }
        if self.grid_n < 16 {
            return Err(ConfigError::Invalid(format!(
                "grid_n must be >= 16, got {}",
                self.grid_n
            )));
        }
        // every rate row must produce valid radio parameters
        let pmin = self.pmin_dbm()?;
        for row in &self.rates {
            RadioParams::new(row.sensitivity_dbm, pmin, self.alpha, self.eta)?;
        }
        Ok(())
    }

    pub fn rate_table(&self) -> Result<RateTable, ConfigError> {
        let rows = self
            .rates
            .iter()
            .map(|r| RateRow {
                rate_mbps: r.rate_mbps,
                sensitivity_dbm: r.sensitivity_dbm,
            })
            .collect();
        Ok(RateTable::new(rows)?)
    }

    pub fn pmin_dbm(&self) -> Result<f64, ConfigError> {
        match self.pmin {
            PminRule::ExplicitDbm(dbm) => Ok(dbm),
            PminRule::Rule(PminKeyword::MinimumRate) => {
                Ok(self.rate_table()?.minimum_rate_sensitivity_dbm())
            }
        }
    }

    pub fn radio_params_for(&self, rate_mbps: f64) -> Result<RadioParams, ConfigError> {
        let table = self.rate_table()?;
        let pt = table.sensitivity_for(rate_mbps)?;
        Ok(RadioParams::new(pt, self.pmin_dbm()?, self.alpha, self.eta)?)
    }

    pub fn mc_config(&self) -> crate::oracle::McConfig {
        crate::oracle::McConfig::new(self.mc.samples, self.mc.seed, self.mc.workers)
            .expect("validated configuration")
    }
}
