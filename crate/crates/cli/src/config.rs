use std::path::PathBuf;

use clap::ValueEnum;
use hankel_spectra::boundary::{PredictionConfig, DEFAULT_SAMPLES};
use hankel_spectra::quasihomogeneous::DEFAULT_NODES;
use serde::Serialize;

use crate::input::UsageError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Settings shared by every subcommand. The inner cap is not configurable: it is
/// always the degree cap plus the symbol degree in each coordinate.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub alpha_cap: u32,
    pub degree_cap: u32,
    pub nodes: usize,
    pub samples: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Ambient dimension forced on the parsed symbol.
    pub dim: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha_cap: 10,
            degree_cap: 12,
            nodes: DEFAULT_NODES,
            samples: DEFAULT_SAMPLES,
            tol: 1e-6,
            format: Format::Json,
            out: None,
            dim: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.alpha_cap == 0 || self.degree_cap == 0 {
            return Err(UsageError::new("--cap and --degree must be positive"));
        }
        if self.nodes < 2 {
            return Err(UsageError::new("--nodes must be at least 2"));
        }
        if self.samples < 4 {
            return Err(UsageError::new("--samples must be at least 4"));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(UsageError::new(format!("--tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.dim == Some(0) {
            return Err(UsageError::new("--dim must be positive"));
        }
        Ok(())
    }

    pub fn prediction(&self) -> PredictionConfig {
        PredictionConfig { alpha_cap: self.alpha_cap, degree_cap: self.degree_cap, samples: self.samples }
    }
}
