//! Run configuration: depths, grids, tolerances, output format.
//!
//! Defaults are overridden first by a key=value config file (pointed to
//! by `ROUMIEU_KIT_CONFIG` or `--config`), then by command-line flags.
//! The effective configuration is echoed into every report header so
//! runs are reproducible from their outputs alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Geometric grid description for the `t` axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        crate::util::geometric_grid(self.min, self.max, self.points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Truncation depth for every prefix computation.
    pub depth: usize,
    /// Largest materialised matrix row.
    pub nmax: usize,
    /// Grid for weight-function checks and associated-function sweeps.
    pub t_grid: GridSpec,
    /// Sample count for stored Young conjugates.
    pub y_points: usize,
    /// Geometric factors tried by the inductive membership search.
    pub h_grid: Vec<f64>,
    /// Tail tolerance for the strict domination test.
    pub tol_prec: f64,
    /// Relative accuracy target of the conjugate refinement.
    pub conjugate_tol: f64,
    /// Partial suprema must cross this level before non-membership is
    /// claimed through a diagonal witness.
    pub divergence_threshold: f64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            depth: 200,
            nmax: 8,
            t_grid: GridSpec { min: 1.0, max: 1e6, points: 601 },
            y_points: 2049,
            h_grid: vec![1.0, 0.5, 0.25],
            tol_prec: 0.1,
            conjugate_tol: 1e-6,
            divergence_threshold: 1e6,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth < 8 {
            return Err(Error::InvalidArgument(format!(
                "depth = {}; at least 8 required",
                self.depth
            )));
        }
        for (name, v) in [
            ("tol_prec", self.tol_prec),
            ("conjugate_tol", self.conjugate_tol),
            ("divergence_threshold", self.divergence_threshold),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidArgument(format!("{name} = {v}; positive required")));
            }
        }
        if self.tol_prec >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "tol_prec = {}; a value in (0, 1) is required",
                self.tol_prec
            )));
        }
        if self.h_grid.is_empty() || self.h_grid.iter().any(|h| !(*h > 0.0)) {
            return Err(Error::InvalidArgument("h_grid must hold positive factors".into()));
        }
        if !(self.t_grid.min > 0.0 && self.t_grid.max > self.t_grid.min)
            || self.t_grid.points < 2
        {
            return Err(Error::InvalidArgument("t_grid must be non-degenerate".into()));
        }
        if self.y_points < 16 {
            return Err(Error::InvalidArgument("y_points must be at least 16".into()));
        }
        Ok(())
    }

    /// Apply one `key = value` override.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let parse_f64 = |v: &str| -> Result<f64> {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("field {key}: {v:?} is not a number")))
        };
        let parse_usize = |v: &str| -> Result<usize> {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("field {key}: {v:?} is not an integer")))
        };
        match key.trim() {
            "depth" => self.depth = parse_usize(value)?,
            "nmax" => self.nmax = parse_usize(value)?,
            "tol_prec" => self.tol_prec = parse_f64(value)?,
            "conjugate_tol" => self.conjugate_tol = parse_f64(value)?,
            "divergence_threshold" | "threshold" => {
                self.divergence_threshold = parse_f64(value)?
            }
            "t_min" => self.t_grid.min = parse_f64(value)?,
            "t_max" => self.t_grid.max = parse_f64(value)?,
            "t_points" => self.t_grid.points = parse_usize(value)?,
            "y_points" => self.y_points = parse_usize(value)?,
            "h_grid" => {
                let parsed: std::result::Result<Vec<f64>, _> =
                    value.split(',').map(|p| p.trim().parse::<f64>()).collect();
                self.h_grid = parsed
                    .map_err(|_| Error::Parse(format!("field h_grid: {value:?}")))?;
            }
            "format" => {
                self.format = match value.trim() {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    "text" => OutputFormat::Text,
                    other => {
                        return Err(Error::Parse(format!(
                            "field format: {other:?} is not one of json|csv|text"
                        )))
                    }
                }
            }
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Parse `key = value` lines (`#` starts a comment).
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse(format!(
                    "config line {}: expected key = value, got {raw:?}",
                    lineno + 1
                )));
            };
            self.apply(key, value)?;
        }
        self.validate()
    }
}
