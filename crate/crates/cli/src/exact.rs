//! `exact`: closed-form spectrum of a single monomial `c z^n zbar^m`.

use anyhow::Result;
use hankel_spectra::monomial::{
    enumerate_essential_spectrum, enumerate_spectrum, multiplicity_class, EigenRecord, Multiplicity, MultiplicityClass,
};
use hankel_spectra::rational::ExactScalar;
use hankel_spectra::symbol::Coefficient;
use hankel_spectra::PolySymbol;
use serde::Serialize;

use crate::config::RunConfig;
use crate::input::UsageError;
use crate::output::csv_string;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvenanceOut {
    pub alpha: Vec<u32>,
    /// One-based coordinates of `B`.
    pub subset: Vec<usize>,
    pub full: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactValue {
    pub value: ExactScalar,
    pub multiplicity: Multiplicity,
    pub is_eigenvalue: bool,
    pub is_limit_point: bool,
    pub in_essential_spectrum: bool,
    pub provenance: Vec<ProvenanceOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactReport {
    pub command: &'static str,
    pub symbol: String,
    pub dim: usize,
    pub holo: Vec<u32>,
    pub antiholo: Vec<u32>,
    /// `|c|^2`; every value below is already multiplied by it.
    pub coefficient_modulus_sq: ExactScalar,
    pub alpha_cap: u32,
    pub multiplicity_class: MultiplicityClass,
    pub zero_operator: bool,
    /// The listed values are a finite slice of an infinite set.
    pub truncated: bool,
    pub values: Vec<ExactValue>,
    pub essential_spectrum: Vec<ExactScalar>,
}

fn scaled(v: &ExactScalar, s: &ExactScalar) -> ExactScalar {
    ExactScalar::new(v.value() * s.value())
}

fn provenance(r: &EigenRecord) -> Vec<ProvenanceOut> {
    r.provenance
        .iter()
        .map(|p| ProvenanceOut { alpha: p.alpha.entries().to_vec(), subset: p.subset.one_based(), full: p.full })
        .collect()
}

pub fn exact_report(sym: &PolySymbol, cfg: &RunConfig) -> Result<ExactReport, UsageError> {
    let (coef, mono) = sym.as_monomial().ok_or_else(|| {
        UsageError::new(format!("`exact` needs a single monomial c*z^n*zb^m; use `approx` for {sym}"))
    })?;
    let modulus = match coef.norm_sqr() {
        Coefficient::Exact(c) => ExactScalar::new(c.re),
        Coefficient::Float(_) => {
            return Err(UsageError::new("`exact` needs a rational coefficient; use `approx` for floating coefficients"))
        }
    };
    let spectrum = enumerate_spectrum(&mono, cfg.alpha_cap)?;
    let essential = enumerate_essential_spectrum(&mono, cfg.alpha_cap)?;
    let values = spectrum
        .records
        .iter()
        .map(|r| ExactValue {
            value: scaled(&r.value, &modulus),
            multiplicity: r.multiplicity,
            is_eigenvalue: r.is_eigenvalue(),
            is_limit_point: r.is_limit_point,
            in_essential_spectrum: essential.contains(&r.value),
            provenance: provenance(r),
        })
        .collect();
    Ok(ExactReport {
        command: "exact",
        symbol: sym.to_string(),
        dim: sym.dim(),
        holo: mono.holo.entries().to_vec(),
        antiholo: mono.antiholo.entries().to_vec(),
        coefficient_modulus_sq: modulus.clone(),
        alpha_cap: cfg.alpha_cap,
        multiplicity_class: multiplicity_class(&mono),
        zero_operator: spectrum.zero_operator,
        truncated: spectrum.truncated,
        values,
        essential_spectrum: essential.values().iter().map(|v| scaled(v, &modulus)).collect(),
    })
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// One row per value; `provenance` lists `alpha@B` pairs separated by `;`, with
/// coordinates inside each part separated by spaces.
pub fn exact_csv(report: &ExactReport) -> Result<String> {
    csv_string(
        &["value", "multiplicity", "is_eigenvalue", "is_limit_point", "in_essential_spectrum", "provenance"],
        |w| {
            for v in &report.values {
                let prov = v
                    .provenance
                    .iter()
                    .map(|p| format!("{}@{}", join(&p.alpha, " "), join(&p.subset, " ")))
                    .collect::<Vec<_>>()
                    .join(";");
                w.write_record([
                    v.value.to_string(),
                    format!("{:?}", v.multiplicity),
                    v.is_eigenvalue.to_string(),
                    v.is_limit_point.to_string(),
                    v.in_essential_spectrum.to_string(),
                    prov,
                ])?;
            }
            Ok(())
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_symbol;

    fn cfg(cap: u32) -> RunConfig {
        RunConfig { alpha_cap: cap, ..RunConfig::default() }
    }

    fn vals(r: &ExactReport) -> Vec<String> {
        r.values.iter().map(|v| v.value.to_string()).collect()
    }

    #[test]
    fn conjugate_coordinate_in_two_variables() {
        let r = exact_report(&parse_symbol("zb1", Some(2)).unwrap(), &cfg(3)).unwrap();
        assert_eq!(vals(&r), ["0/1", "1/20", "1/12", "1/6", "1/2"]);
        assert_eq!(r.multiplicity_class, MultiplicityClass::AllInfinite);
        assert!(r.values.iter().all(|v| v.multiplicity == Multiplicity::Infinite && v.in_essential_spectrum));
    }

    #[test]
    fn holomorphic_gives_zero() {
        let r = exact_report(&parse_symbol("z1^2", None).unwrap(), &cfg(4)).unwrap();
        assert_eq!(vals(&r), ["0/1"]);
        assert!(r.zero_operator && !r.truncated);
    }

    #[test]
    fn quarter_at_origin() {
        let r = exact_report(&parse_symbol("zb1^1*zb2^1", None).unwrap(), &cfg(1)).unwrap();
        let q = r.values.iter().find(|v| v.value.to_string() == "1/4").unwrap();
        assert!(q.provenance.contains(&ProvenanceOut { alpha: vec![0, 0], subset: vec![1, 2], full: true }));
        assert!(q.is_eigenvalue);
    }

    #[test]
    fn coefficient_scales_values() {
        let r = exact_report(&parse_symbol("(1+i)*zb1", None).unwrap(), &cfg(2)).unwrap();
        assert_eq!(r.coefficient_modulus_sq.to_string(), "2/1");
        assert!(vals(&r).contains(&"1/1".to_string()));
    }

    #[test]
    fn non_monomial_is_usage_error() {
        let e = exact_report(&parse_symbol("zb1 + zb2", None).unwrap(), &cfg(2)).unwrap_err();
        assert!(e.0.contains("approx"));
    }

    #[test]
    fn csv_has_one_row_per_value() {
        let r = exact_report(&parse_symbol("zb1", Some(2)).unwrap(), &cfg(3)).unwrap();
        let text = exact_csv(&r).unwrap();
        assert_eq!(text.lines().count(), 1 + r.values.len());
        assert!(text.lines().nth(2).unwrap().starts_with("1/20,"));
    }
}
