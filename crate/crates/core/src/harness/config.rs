//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comment
//! p = 1/2
//! distortion = 11/100
//! n = 2^14, 2^16, 2^18
//! trials = 20
//! checks = match_count_mean, coverage
//! ```
//!
//! Integers accept `a^b` powers. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use crate::codec::Variant;
use crate::dictionary::LevelConfig;
use crate::rd_math::{DistortionBudget, SourceModel};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub p: SourceModel,
    pub distortion: DistortionBudget,
    /// Base level width; each check has its own default when unset.
    pub ell: Option<u32>,
    pub delta: f64,
    pub n_values: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub checks: Vec<String>,
    /// Dictionary depth `L` examined by the two-level checks.
    pub level: u32,
    /// Input bits consumed when building each dictionary sample.
    pub build_bits: u64,
    pub frontier_trials: u64,
    /// Codebook size for the random-codebook baseline.
    pub baseline_m: u64,
    /// Sequence pairs examined by the ball-intersection check.
    pub pairs: u64,
    pub variant: Variant,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            p: SourceModel::new(0.5).expect("valid"),
            distortion: DistortionBudget::new(1, 4).expect("valid"),
            ell: None,
            delta: LevelConfig::DEFAULT_DELTA,
            n_values: vec![1 << 14, 1 << 16, 1 << 18],
            trials: 10_000,
            seed: 1,
            output: None,
            checks: Vec::new(),
            level: 4,
            build_bits: 256,
            frontier_trials: 1000,
            baseline_m: 3,
            pairs: 100,
            variant: Variant::Idealized,
        }
    }
}

fn bad(key: &str, value: &str) -> Error {
    Error::Config(format!("invalid value for {key}: {value:?}"))
}

fn parse_u64(key: &str, value: &str) -> Result<u64> {
    let value = value.trim();
    if let Some((base, exp)) = value.split_once('^') {
        let base: u64 = base.trim().parse().map_err(|_| bad(key, value))?;
        let exp: u32 = exp.trim().parse().map_err(|_| bad(key, value))?;
        return base.checked_pow(exp).ok_or_else(|| bad(key, value));
    }
    value.parse().map_err(|_| bad(key, value))
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "p" => self.p = value.parse().map_err(|_| bad(key, value))?,
            "distortion" | "D" => self.distortion = value.parse().map_err(|_| bad(key, value))?,
            "ell" => self.ell = Some(parse_u64(key, value)? as u32),
            "delta" => self.delta = value.parse().map_err(|_| bad(key, value))?,
            "n" | "n_values" => {
                self.n_values = list(value).map(|v| parse_u64(key, v)).collect::<Result<_>>()?;
            }
            "trials" => self.trials = parse_u64(key, value)?,
            "seed" => self.seed = parse_u64(key, value)?,
            "output" => self.output = Some(PathBuf::from(value)),
            "checks" => self.checks = list(value).map(String::from).collect(),
            "level" => self.level = parse_u64(key, value)? as u32,
            "build_bits" => self.build_bits = parse_u64(key, value)?,
            "frontier_trials" => self.frontier_trials = parse_u64(key, value)?,
            "baseline_m" => self.baseline_m = parse_u64(key, value)?,
            "pairs" => self.pairs = parse_u64(key, value)?,
            "variant" => self.variant = value.parse().map_err(|_| bad(key, value))?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.frontier_trials == 0 {
            return Err(Error::Config("trial counts must be at least 1".into()));
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return Err(Error::Config("n values must be present and positive".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta must be in (0, 1), got {}", self.delta)));
        }
        if self.level == 0 {
            return Err(Error::Config("level must be at least 1".into()));
        }
        Ok(())
    }
}
