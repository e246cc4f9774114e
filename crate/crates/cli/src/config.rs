//! Run configuration: a flat `key = value` file overlaid by command-line
//! flags. Keys may use `-` or `_` interchangeably.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use qfridge_core::cycle::PhaseGrid;
use qfridge_core::fridge::FridgeConfig;

use crate::error::CliError;

pub const KEYS: &[&str] = &[
    "e1",
    "e2",
    "e3",
    "t1",
    "t2",
    "t3",
    "g",
    "theta",
    "cycles",
    "grid",
    "bits",
    "epsilon",
    "rounds",
    "seed",
    "delta_scale",
    "format",
    "out",
    "block_order",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BcsParams {
    pub bits: usize,
    pub epsilon: f64,
    pub rounds: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub fridge: FridgeConfig,
    pub thetas: Vec<f64>,
    pub cycles: usize,
    pub grid: PhaseGrid,
    pub bcs: BcsParams,
    pub delta_scale: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub block_order: Vec<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let fridge = FridgeConfig::default();
        Self {
            fridge,
            thetas: vec![fridge.theta],
            cycles: 400,
            grid: PhaseGrid::default(),
            bcs: BcsParams {
                bits: 100_000,
                epsilon: 0.5,
                rounds: 3,
                seed: 0,
            },
            delta_scale: 2.0,
            format: Format::Csv,
            out: None,
            block_order: vec![0, 1, 2, 3],
        }
    }
}

pub fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

/// `key = value` pairs from config text; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::invalid(format!("config line {}: expected key=value", n + 1))
        })?;
        out.push((normalize_key(k), v.trim().to_string()));
    }
    Ok(out)
}

pub fn read_pairs(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_pairs(&text)
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("invalid value for `{key}`: {value:?}")))
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value.split(',').map(|s| num(key, s)).collect()
}

fn parse_grid(value: &str) -> Result<PhaseGrid, CliError> {
    let v: Vec<f64> = list("grid", value)?;
    if v.len() != 5 || v[4].fract() != 0.0 || v[4] < 0.0 {
        return Err(CliError::invalid(
            "invalid value for `grid`: expected T2min,T2max,T3min,T3max,steps",
        ));
    }
    let steps = v[4] as usize;
    Ok(PhaseGrid {
        t2_range: (v[0], v[1]),
        t3_range: (v[2], v[3]),
        steps: (steps, steps),
    })
}

impl RunConfig {
    /// Apply pairs in order, later ones overriding earlier ones, then
    /// validate the result.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (key, value) in pairs {
            cfg.set(key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = normalize_key(key);
        match key.as_str() {
            "e1" => self.fridge.gaps[0] = num(&key, value)?,
            "e2" => self.fridge.gaps[1] = num(&key, value)?,
            "e3" => self.fridge.gaps[2] = num(&key, value)?,
            "t1" => self.fridge.temperatures[0] = num(&key, value)?,
            "t2" => self.fridge.temperatures[1] = num(&key, value)?,
            "t3" => self.fridge.temperatures[2] = num(&key, value)?,
            "g" => self.fridge.g = num(&key, value)?,
            "theta" => self.thetas = list(&key, value)?,
            "cycles" => self.cycles = num(&key, value)?,
            "grid" => self.grid = parse_grid(value)?,
            "bits" => self.bcs.bits = num(&key, value)?,
            "epsilon" => self.bcs.epsilon = num(&key, value)?,
            "rounds" => self.bcs.rounds = num(&key, value)?,
            "seed" => self.bcs.seed = num(&key, value)?,
            "delta_scale" => self.delta_scale = num(&key, value)?,
            "format" => {
                self.format = Format::from_str(value.trim(), true).map_err(|_| {
                    CliError::invalid(format!("invalid value for `format`: {value:?}"))
                })?
            }
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "block_order" => self.block_order = list(&key, value)?,
            _ => return Err(CliError::invalid(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.thetas.is_empty() || self.thetas.iter().any(|t| !t.is_finite()) {
            return Err(CliError::invalid("theta list must hold finite values"));
        }
        self.fridge.with_theta(self.thetas[0])?;
        if self.cycles < 1 {
            return Err(CliError::invalid("cycles must be at least 1"));
        }
        self.grid.validate()?;
        let b = &self.bcs;
        if b.bits < 2 || !b.bits.is_multiple_of(2) {
            return Err(CliError::invalid("bits must be even and at least 2"));
        }
        if !(0.0..1.0).contains(&b.epsilon) {
            return Err(CliError::invalid("epsilon must lie in [0, 1)"));
        }
        if !(self.delta_scale.is_finite() && self.delta_scale > 0.0) {
            return Err(CliError::invalid("delta_scale must be positive"));
        }
        let mut sorted = self.block_order.clone();
        sorted.sort_unstable();
        if sorted != [0, 1, 2, 3] {
            return Err(CliError::invalid(
                "block_order must be a permutation of 0,1,2,3",
            ));
        }
        Ok(())
    }

    /// Fridge settings at a given angle.
    pub fn fridge_at(&self, theta: f64) -> Result<FridgeConfig, CliError> {
        Ok(self.fridge.with_theta(theta)?)
    }

    pub fn echo(&self) -> serde_json::Value {
        let f = &self.fridge;
        serde_json::json!({
            "e1": f.gaps[0],
            "e2": f.gaps[1],
            "e3": f.gaps[2],
            "t1": f.temperatures[0],
            "t2": f.temperatures[1],
            "t3": f.temperatures[2],
            "g": f.g,
            "theta": self.thetas,
            "cycles": self.cycles,
            "grid": [
                self.grid.t2_range.0,
                self.grid.t2_range.1,
                self.grid.t3_range.0,
                self.grid.t3_range.1,
                self.grid.steps.0,
            ],
            "bits": self.bcs.bits,
            "epsilon": self.bcs.epsilon,
            "rounds": self.bcs.rounds,
            "seed": self.bcs.seed,
            "delta_scale": self.delta_scale,
            "format": self.format.name(),
            "block_order": self.block_order,
        })
    }
}
