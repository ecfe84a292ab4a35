//! Python module `hankel_spectra_py`.
//!
//! Exact values come back as `fractions.Fraction`; reports come back as the same
//! dictionaries the command line prints as JSON.

// the pyfunction macro expands to a redundant error conversion
#![allow(clippy::useless_conversion)]

use hankel_spectra::boundary::slice_norm_profile;
use hankel_spectra::eigen::eigenvalues;
use hankel_spectra::galerkin::{assemble, BasisTruncation};
use hankel_spectra::monomial::lambda_value as core_lambda;
use hankel_spectra::{MultiIndex, PolySymbol, Subset};
use hankel_spectra_cli::approx::{approx_report, compress, ArithmeticArg};
use hankel_spectra_cli::boundary::boundary_report;
use hankel_spectra_cli::exact::exact_report;
use hankel_spectra_cli::verify::{self, VerifyOptions};
use hankel_spectra_cli::{parse_symbol, RunConfig, UsageError};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn usage(e: UsageError) -> PyErr {
    PyValueError::new_err(e.0)
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import_bound("json")?.call_method1("loads", (text,))?.unbind())
}

fn fraction(py: Python<'_>, s: String) -> PyResult<PyObject> {
    Ok(py.import_bound("fractions")?.getattr("Fraction")?.call1((s,))?.unbind())
}

/// A polynomial in `z` and `conj(z)`, parsed from an expression or JSON term list.
#[pyclass(name = "Symbol", module = "hankel_spectra_py")]
#[derive(Clone)]
struct PySymbol {
    inner: PolySymbol,
}

#[pymethods]
impl PySymbol {
    #[new]
    #[pyo3(signature = (spec, dim=None))]
    fn new(spec: &str, dim: Option<usize>) -> PyResult<Self> {
        Ok(Self { inner: parse_symbol(spec, dim).map_err(usage)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn is_holomorphic(&self) -> bool {
        self.inner.is_holomorphic()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Symbol({:?}, dim={})", self.inner.to_string(), self.inner.dim())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Closed-form eigenvalue for `z^n conj(z)^m` on `z^alpha` over the one-based subset.
#[pyfunction]
fn lambda_value(py: Python<'_>, n: Vec<u32>, m: Vec<u32>, alpha: Vec<u32>, subset: Vec<usize>) -> PyResult<PyObject> {
    let dim = n.len();
    let b = Subset::from_one_based(&subset, dim).map_err(value_err)?;
    let mi = |v: Vec<u32>| MultiIndex::new(v).map_err(value_err);
    let v = core_lambda(&mi(n)?, &mi(m)?, &mi(alpha)?, &b).map_err(value_err)?;
    fraction(py, v.to_string())
}

/// Report of the `exact` command for a monomial.
#[pyfunction]
#[pyo3(signature = (spec, cap=10, dim=None))]
fn exact(py: Python<'_>, spec: &str, cap: u32, dim: Option<usize>) -> PyResult<PyObject> {
    let cfg = RunConfig { alpha_cap: cap, dim, ..RunConfig::default() };
    let report = exact_report(&parse_symbol(spec, dim).map_err(usage)?, &cfg).map_err(usage)?;
    to_py(py, &report)
}

/// Exact values of the monomial spectrum as sorted fractions.
#[pyfunction]
#[pyo3(signature = (spec, cap=10, dim=None))]
fn exact_values(py: Python<'_>, spec: &str, cap: u32, dim: Option<usize>) -> PyResult<Vec<PyObject>> {
    let cfg = RunConfig { alpha_cap: cap, dim, ..RunConfig::default() };
    let report = exact_report(&parse_symbol(spec, dim).map_err(usage)?, &cfg).map_err(usage)?;
    report.values.iter().map(|v| fraction(py, v.value.to_string())).collect()
}

/// Report of the `approx` command.
#[pyfunction]
#[pyo3(signature = (spec, degree=12, dim=None))]
fn approx(py: Python<'_>, spec: &str, degree: u32, dim: Option<usize>) -> PyResult<PyObject> {
    let cfg = RunConfig { degree_cap: degree, dim, ..RunConfig::default() };
    let mat = compress(&parse_symbol(spec, dim).map_err(usage)?, &cfg, ArithmeticArg::Auto).map_err(usage)?;
    to_py(py, &approx_report(&mat).map_err(value_err)?)
}

/// Ascending eigenvalues of the compression at degree cap `degree`.
#[pyfunction]
#[pyo3(signature = (symbol, degree=12))]
fn compression_eigenvalues(py: Python<'_>, symbol: &PySymbol, degree: u32) -> PyResult<Vec<f64>> {
    let sym = symbol.inner.clone();
    py.allow_threads(move || {
        let trunc = BasisTruncation::new(sym.dim(), degree)?;
        eigenvalues(&assemble(&sym, &trunc)?)
    })
    .map_err(value_err)
}

/// `(theta, slice norm)` samples along a one-based coordinate.
#[pyfunction]
#[pyo3(signature = (symbol, coord, samples=64, degree=12))]
fn slice_profile(
    py: Python<'_>,
    symbol: &PySymbol,
    coord: usize,
    samples: usize,
    degree: u32,
) -> PyResult<Vec<(f64, f64)>> {
    let sym = symbol.inner.clone();
    let p = py.allow_threads(move || slice_norm_profile(&sym, coord, samples, degree)).map_err(value_err)?;
    Ok(p.samples.iter().map(|s| (s.theta, s.lambda)).collect())
}

/// Report of the `boundary` command.
#[pyfunction]
#[pyo3(signature = (spec, coord=1, degree=12, samples=256, dim=None))]
fn boundary(
    py: Python<'_>,
    spec: &str,
    coord: usize,
    degree: u32,
    samples: usize,
    dim: Option<usize>,
) -> PyResult<PyObject> {
    let cfg = RunConfig { degree_cap: degree, samples, dim, ..RunConfig::default() };
    cfg.validate().map_err(usage)?;
    let report = boundary_report(&parse_symbol(spec, dim).map_err(usage)?, coord, &cfg).map_err(usage)?;
    to_py(py, &report)
}

/// Run verification suites (the defaults when `suites` is empty).
#[pyfunction]
#[pyo3(signature = (suites=Vec::new()))]
fn run_verify(py: Python<'_>, suites: Vec<String>) -> PyResult<PyObject> {
    let opts = VerifyOptions { suites, ..VerifyOptions::default() };
    let report = py.allow_threads(|| verify::run(&opts, &RunConfig::default())).map_err(usage)?;
    to_py(py, &report)
}

#[pymodule]
fn hankel_spectra_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySymbol>()?;
    m.add_function(wrap_pyfunction!(lambda_value, m)?)?;
    m.add_function(wrap_pyfunction!(exact, m)?)?;
    m.add_function(wrap_pyfunction!(exact_values, m)?)?;
    m.add_function(wrap_pyfunction!(approx, m)?)?;
    m.add_function(wrap_pyfunction!(compression_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(slice_profile, m)?)?;
    m.add_function(wrap_pyfunction!(boundary, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
