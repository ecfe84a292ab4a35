//! `approx`: spectrum of the Galerkin compression at degree cap `N`.

use anyhow::Result;
use clap::ValueEnum;
use hankel_spectra::eigen::eigenvalues;
use hankel_spectra::galerkin::{assemble_with, Arithmetic, BasisTruncation, CompressionMatrix};
use hankel_spectra::PolySymbol;
use serde::Serialize;

use crate::config::RunConfig;
use crate::input::UsageError;
use crate::output::csv_string;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ArithmeticArg {
    #[default]
    Auto,
    Exact,
    Float,
}

impl From<ArithmeticArg> for Arithmetic {
    fn from(a: ArithmeticArg) -> Self {
        match a {
            ArithmeticArg::Auto => Arithmetic::Auto,
            ArithmeticArg::Exact => Arithmetic::Exact,
            ArithmeticArg::Float => Arithmetic::Float,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationInfo {
    #[serde(rename = "N")]
    pub degree_cap: u32,
    pub inner_cap: u32,
    pub inner_cap_policy: &'static str,
    pub basis_size: usize,
    pub basis_order: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxReport {
    pub command: &'static str,
    pub symbol: String,
    pub dim: usize,
    pub truncation: TruncationInfo,
    pub exactness: String,
    pub hermitian_deviation: f64,
    pub frobenius_norm: f64,
    pub note: String,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
}

pub fn compress(sym: &PolySymbol, cfg: &RunConfig, arithmetic: ArithmeticArg) -> Result<CompressionMatrix, UsageError> {
    let trunc = BasisTruncation::new(sym.dim(), cfg.degree_cap)?;
    Ok(assemble_with(sym, &trunc, arithmetic.into())?)
}

pub fn approx_report(mat: &CompressionMatrix) -> Result<ApproxReport> {
    let n = mat.truncation.degree_cap();
    Ok(ApproxReport {
        command: "approx",
        symbol: mat.symbol.to_string(),
        dim: mat.truncation.dim(),
        truncation: TruncationInfo {
            degree_cap: n,
            inner_cap: mat.inner_cap,
            inner_cap_policy: "N + symbol degree",
            basis_size: mat.size(),
            basis_order: "graded lexicographic",
        },
        exactness: mat.exactness().to_string(),
        hermitian_deviation: mat.hermitian_deviation(),
        frobenius_norm: mat.frobenius_norm(),
        note: format!("compression spectrum at N={n}"),
        eigenvalues: eigenvalues(mat)?,
    })
}

pub fn approx_csv(report: &ApproxReport) -> Result<String> {
    csv_string(&["index", "eigenvalue", "N", "basis_size", "exactness"], |w| {
        for (i, e) in report.eigenvalues.iter().enumerate() {
            w.write_record([
                i.to_string(),
                format!("{e:?}"),
                report.truncation.degree_cap.to_string(),
                report.truncation.basis_size.to_string(),
                report.exactness.clone(),
            ])?;
        }
        Ok(())
    })
}
