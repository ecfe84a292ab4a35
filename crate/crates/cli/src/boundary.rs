//! `boundary`: slice-norm profile along a coordinate, predicted essential set and
//! its check against the compression spectrum.

use anyhow::Result;
use hankel_spectra::boundary::{analyze, BoundaryAnalysis};
use hankel_spectra::PolySymbol;
use serde::Serialize;

use crate::config::RunConfig;
use crate::input::UsageError;
use crate::output::csv_string;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Zero,
    Constant,
    NonConstant,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub command: &'static str,
    pub symbol: String,
    pub dim: usize,
    pub coord: usize,
    #[serde(rename = "N")]
    pub degree_cap: u32,
    pub tol: f64,
    pub verdict: Verdict,
    pub relative_variation: f64,
    pub note: String,
    pub analysis: BoundaryAnalysis,
}

pub fn boundary_report(sym: &PolySymbol, coord: usize, cfg: &RunConfig) -> Result<BoundaryReport, UsageError> {
    if sym.dim() < 2 {
        return Err(UsageError::new("`boundary` needs a symbol in at least two variables (try --dim 2)"));
    }
    let analysis = analyze(sym, coord, &cfg.prediction(), cfg.tol)?;
    let p = &analysis.profile;
    let verdict = if p.max == 0.0 {
        Verdict::Zero
    } else if p.constant {
        Verdict::Constant
    } else {
        Verdict::NonConstant
    };
    Ok(BoundaryReport {
        command: "boundary",
        symbol: sym.to_string(),
        dim: sym.dim(),
        coord,
        degree_cap: cfg.degree_cap,
        tol: cfg.tol,
        verdict,
        relative_variation: p.relative_variation(),
        note: format!("slice norms and containment use compression spectra at N={}", cfg.degree_cap),
        analysis,
    })
}

pub fn boundary_csv(report: &BoundaryReport) -> Result<String> {
    csv_string(&["theta", "slice_norm", "coord", "N"], |w| {
        for s in &report.analysis.profile.samples {
            w.write_record([
                format!("{:?}", s.theta),
                format!("{:?}", s.lambda),
                report.coord.to_string(),
                report.degree_cap.to_string(),
            ])?;
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_symbol;

    fn run(s: &str, coord: usize) -> BoundaryReport {
        let cfg = RunConfig { degree_cap: 8, samples: 32, ..RunConfig::default() };
        boundary_report(&parse_symbol(s, None).unwrap(), coord, &cfg).unwrap()
    }

    #[test]
    fn verdicts() {
        let r = run("zb1*(zb2+1)", 2);
        assert_eq!(r.verdict, Verdict::NonConstant);
        assert!(r.analysis.prediction.contains_interval(0.0, 2.0, 1e-9));
        assert_eq!(run("zb1^2*zb2^3", 1).verdict, Verdict::Constant);
        assert_eq!(run("z1*z2", 1).verdict, Verdict::Zero);
    }

    #[test]
    fn univariate_rejected() {
        assert!(boundary_report(&parse_symbol("zb1", None).unwrap(), 1, &RunConfig::default()).is_err());
    }
}
