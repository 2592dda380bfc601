//! Rejection-rate experiments over distributions × statistics.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gof::gamma_gof_test;
use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::seed;
use crate::statistics::BaseFunction;

fn default_statistics() -> Vec<String> {
    vec!["range".into()]
}
fn default_alpha() -> f64 {
    0.05
}
fn default_permutations() -> usize {
    499
}

/// Experiment description, read from TOML or JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Specs such as `"gamma:2,1"` or `"discrete:1,2,3"`.
    pub distributions: Vec<DistributionSpec>,
    /// Statistic specs such as `"range"` or `"quad:weights.csv"`.
    #[serde(default = "default_statistics")]
    pub statistics: Vec<String>,
    /// Group size.
    pub n: usize,
    /// Groups per replication.
    pub m: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_permutations")]
    pub permutations: usize,
    pub replications: usize,
    #[serde(default)]
    pub seed: u64,
    /// CSV output path; the JSON mirror goes next to it.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Parses by extension (`.toml` or `.json`); other extensions try TOML, then JSON.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
        let parsed = match ext.as_str() {
            "json" => serde_json::from_str(&text).map_err(|e| e.to_string()),
            "toml" => toml::from_str(&text).map_err(|e| e.to_string()),
            _ => toml::from_str(&text)
                .map_err(|e| e.to_string())
                .or_else(|_| serde_json::from_str(&text).map_err(|e| e.to_string())),
        };
        parsed.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Config(format!("n must be at least 3, got {}", self.n)));
        }
        if self.m < 4 {
            return Err(Error::Config(format!("m must be at least 4, got {}", self.m)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.permutations < 99 {
            return Err(Error::Config(format!("permutations must be at least 99, got {}", self.permutations)));
        }
        if self.distributions.is_empty() || self.statistics.is_empty() {
            return Err(Error::Config("need at least one distribution and one statistic".into()));
        }
        Ok(())
    }
}

/// CSV columns, in order.
pub const CSV_HEADER: [&str; 8] = ["distribution", "statistic", "n", "m", "rejections", "replications", "rate", "stderr"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub distribution: String,
    pub statistic: String,
    pub n: usize,
    pub m: usize,
    pub rejections: usize,
    pub replications: usize,
    pub rate: f64,
    pub stderr: f64,
    /// Degenerate groups summed over replications.
    pub degenerate_groups: usize,
    /// Discrete sources fall outside the smooth-density theorem.
    pub conjecture_mode: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentTable {
    pub rows: Vec<ExperimentRow>,
    pub alpha: f64,
    pub permutations: usize,
    pub seed: u64,
    pub conjecture_mode: bool,
    /// `"theorem"` or `"conjecture"`.
    pub mode_label: String,
}

impl ExperimentTable {
    pub fn to_csv(&self) -> Result<String> {
        let (header, rows) = self.cells();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).map_err(|e| Error::Parse(e.to_string()))?;
        for r in &rows {
            w.write_record(r).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Header and string cells, for the run-record side file.
    pub fn cells(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let header = CSV_HEADER.iter().map(|s| s.to_string()).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.distribution.clone(),
                    r.statistic.clone(),
                    r.n.to_string(),
                    r.m.to_string(),
                    r.rejections.to_string(),
                    r.replications.to_string(),
                    format!("{:?}", r.rate),
                    format!("{:?}", r.stderr),
                ]
            })
            .collect();
        (header, rows)
    }
}

/// Runs every (distribution, statistic) cell. Replication `r` of cell `c`
/// draws data from stream `(seed, c, 2r)` and tests with `(seed, c, 2r + 1)`.
pub fn power_experiment(cfg: &ExperimentConfig, base_dir: Option<&Path>) -> Result<ExperimentTable> {
    cfg.validate()?;
    let statistics: Vec<BaseFunction> = cfg
        .statistics
        .iter()
        .map(|s| BaseFunction::parse_in(s, base_dir))
        .collect::<Result<_>>()?;
    for u in &statistics {
        u.check_dimension(cfg.n)?;
    }
    let conjecture_mode = cfg.distributions.iter().any(|d| !d.family().is_continuous());
    let mut rows = Vec::new();
    if cfg.replications > 0 {
        let mut cell = 0u64;
        for dist in &cfg.distributions {
            for u in &statistics {
                let outcomes: Vec<(bool, usize)> = (0..cfg.replications as u64)
                    .into_par_iter()
                    .map(|r| {
                        let data = dist.sample(cfg.n * cfg.m, seed::derive_seed2(cfg.seed, cell, 2 * r))?;
                        let rep = gamma_gof_test(
                            &data,
                            u,
                            cfg.n,
                            cfg.alpha,
                            cfg.permutations,
                            seed::derive_seed2(cfg.seed, cell, 2 * r + 1),
                        )?;
                        Ok((rep.reject, rep.degenerate_groups))
                    })
                    .collect::<Result<_>>()?;
                let rejections = outcomes.iter().filter(|o| o.0).count();
                let reps = cfg.replications;
                let rate = rejections as f64 / reps as f64;
                rows.push(ExperimentRow {
                    distribution: dist.to_string(),
                    statistic: u.label().to_string(),
                    n: cfg.n,
                    m: cfg.m,
                    rejections,
                    replications: reps,
                    rate,
                    stderr: (rate * (1.0 - rate) / reps as f64).sqrt(),
                    degenerate_groups: outcomes.iter().map(|o| o.1).sum(),
                    conjecture_mode: !dist.family().is_continuous(),
                });
                cell += 1;
            }
        }
    }
    Ok(ExperimentTable {
        rows,
        alpha: cfg.alpha,
        permutations: cfg.permutations,
        seed: cfg.seed,
        conjecture_mode,
        mode_label: if conjecture_mode { "conjecture" } else { "theorem" }.into(),
    })
}
