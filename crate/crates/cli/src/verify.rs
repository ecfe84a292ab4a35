//! `verify`: cross-engine oracles, fixture regressions and numerical hygiene.
//!
//! Each suite is a list of named checks. A suite passes when all of its checks pass;
//! the command exits 0 only when every selected suite passes.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use hankel_spectra::boundary::{gap_trend, lipschitz_sample, slice_norm_profile, PredictionConfig};
use hankel_spectra::eigen::eigenvalues;
use hankel_spectra::galerkin::{
    assemble, assemble_toeplitz_identity, assemble_with, symbol_hash, Arithmetic, BasisTruncation, Entries, MatrixDump,
};
use hankel_spectra::index::box_lattice;
use hankel_spectra::monomial::{enumerate_essential_spectrum, enumerate_spectrum, lambda_value, MonomialSymbol};
use hankel_spectra::quasihomogeneous::{
    qh_eigenvalue, Evaluation, QhValue, QuasiHomogeneousSymbol, RadialFactor, RadialProfile,
};
use hankel_spectra::rational::{complex_real, parse_ratio, ExactScalar};
use hankel_spectra::weyl::weyl_schedule;
use hankel_spectra::{Coefficient, MultiIndex, PolySymbol, Subset, Winding};
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::input::{parse_symbol, UsageError};

pub const DEFAULT_SUITES: [&str; 6] =
    ["fixtures", "engines-agree", "toeplitz-identity", "essential", "boundary", "hygiene"];
/// Run only on request: `weyl` because its residuals do not decrease for the
/// reference symbol (see the README), `matrix` because it needs a dump file.
pub const OPTIONAL_SUITES: [&str; 2] = ["weyl", "matrix"];

pub const GOLDEN: &str = include_str!("../fixtures/golden.json");

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Self::new(name, false, format!("error: {e}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(name: &str, checks: Vec<Check>) -> Self {
        Self { name: name.to_string(), passed: !checks.is_empty() && checks.iter().all(|c| c.passed), checks }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn failed_suites(&self) -> Vec<&str> {
        self.suites.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Empty selects the default suites.
    pub suites: Vec<String>,
    pub fixtures: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    /// Symbol the matrix dump is checked against.
    pub symbol: Option<String>,
}

pub fn run(opts: &VerifyOptions, cfg: &RunConfig) -> Result<VerifyReport, UsageError> {
    let mut names: Vec<String> = if opts.suites.is_empty() {
        let mut d: Vec<String> = DEFAULT_SUITES.iter().map(|s| s.to_string()).collect();
        if opts.matrix.is_some() {
            d.push("matrix".into());
        }
        d
    } else {
        opts.suites.clone()
    };
    let mut seen = BTreeSet::new();
    names.retain(|n| seen.insert(n.clone()));
    for n in &names {
        if !DEFAULT_SUITES.contains(&n.as_str()) && !OPTIONAL_SUITES.contains(&n.as_str()) {
            return Err(UsageError::new(format!(
                "unknown suite {n:?}; available: {}",
                DEFAULT_SUITES.iter().chain(OPTIONAL_SUITES.iter()).copied().collect::<Vec<_>>().join(", ")
            )));
        }
    }
    let fixtures = match &opts.fixtures {
        Some(p) => fs::read_to_string(p).map_err(|e| UsageError::new(format!("cannot read {}: {e}", p.display())))?,
        None => GOLDEN.to_string(),
    };
    let matrix = if names.iter().any(|n| n == "matrix") {
        let path = opts.matrix.as_ref().ok_or_else(|| UsageError::new("suite `matrix` needs --matrix <dump>"))?;
        let spec = opts.symbol.as_ref().ok_or_else(|| UsageError::new("suite `matrix` needs --symbol <spec>"))?;
        let text =
            fs::read_to_string(path).map_err(|e| UsageError::new(format!("cannot read {}: {e}", path.display())))?;
        Some((text, parse_symbol(spec, cfg.dim)?))
    } else {
        None
    };
    let suites: Vec<SuiteReport> = names
        .iter()
        .map(|n| match n.as_str() {
            "fixtures" => fixtures_suite(&fixtures),
            "engines-agree" => SuiteReport::new(n, vec![engines_agree(2, 3, 4)]),
            "toeplitz-identity" => SuiteReport::new(n, vec![toeplitz_identity(&REFERENCE_SYMBOLS, 6)]),
            "essential" => SuiteReport::new(n, essential_checks(6)),
            "boundary" => boundary_suite(),
            "hygiene" => SuiteReport::new(n, hygiene_checks(cfg.nodes)),
            "weyl" => SuiteReport::new(n, vec![weyl_trend()]),
            "matrix" => {
                let (text, sym) = matrix.as_ref().expect("checked above");
                SuiteReport::new(n, vec![matrix_dump_check(text, sym)])
            }
            _ => unreachable!(),
        })
        .collect();
    Ok(VerifyReport { passed: suites.iter().all(|s| s.passed), suites })
}

// ---------------------------------------------------------------------------
// fixtures

#[derive(Deserialize)]
struct Golden {
    spectra: Vec<GoldenSet>,
    essential: Vec<GoldenSet>,
    matrices: Vec<GoldenMatrix>,
}

#[derive(Deserialize)]
struct GoldenSet {
    symbol: String,
    dim: usize,
    cap: u32,
    values: Vec<String>,
}

/// Nonzero entries as `[i, j, re, im, radicand]`.
#[derive(Deserialize)]
struct GoldenMatrix {
    symbol: String,
    dim: usize,
    #[serde(rename = "N")]
    n: u32,
    entries: Vec<(usize, usize, String, String, u64)>,
}

fn golden_set_check(kind: &str, g: &GoldenSet, essential: bool) -> Check {
    let name = format!("{kind} {} dim={} cap={}", g.symbol, g.dim, g.cap);
    let run = || -> Result<(Vec<ExactScalar>, Vec<ExactScalar>), String> {
        let sym = parse_symbol(&g.symbol, Some(g.dim)).map_err(|e| e.0)?;
        let (_, mono) = sym.as_monomial().ok_or("not a monomial")?;
        let set = if essential { enumerate_essential_spectrum(&mono, g.cap) } else { enumerate_spectrum(&mono, g.cap) }
            .map_err(|e| e.to_string())?;
        let want =
            g.values.iter().map(|v| v.parse::<ExactScalar>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        Ok((set.values(), want))
    };
    match run() {
        Ok((got, want)) if got == want => Check::new(name, true, format!("{} values", got.len())),
        Ok((got, want)) => Check::new(
            name,
            false,
            format!("expected {} values {:?}, got {} values {:?}", want.len(), strs(&want), got.len(), strs(&got)),
        ),
        Err(e) => Check::error(name, e),
    }
}

fn strs(v: &[ExactScalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn golden_matrix_check(g: &GoldenMatrix) -> Check {
    let name = format!("matrix {} dim={} N={}", g.symbol, g.dim, g.n);
    let run = || -> Result<Option<String>, String> {
        let sym = parse_symbol(&g.symbol, Some(g.dim)).map_err(|e| e.0)?;
        let mat =
            assemble(&sym, &BasisTruncation::new(g.dim, g.n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let size = mat.size();
        let mut expected = vec![None; size * size];
        for (i, j, re, im, rad) in &g.entries {
            if *i >= size || *j >= size {
                return Err(format!("entry ({i}, {j}) outside a {size}x{size} matrix"));
            }
            let re: BigRational = parse_ratio(re).map_err(|e| e.to_string())?;
            let im: BigRational = parse_ratio(im).map_err(|e| e.to_string())?;
            expected[i * size + j] = Some((re, im, *rad));
        }
        for i in 0..size {
            for j in 0..size {
                let got = mat.exact(i, j).ok_or("matrix is not exact")?;
                let ok = match &expected[i * size + j] {
                    None => got.is_zero(),
                    Some((re, im, rad)) => {
                        got.coefficient.re == *re && got.coefficient.im == *im && got.radicand == *rad
                    }
                };
                if !ok {
                    return Ok(Some(format!("entry ({i}, {j}) is {got}")));
                }
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => Check::new(name, true, format!("{} nonzero entries", g.entries.len())),
        Ok(Some(msg)) => Check::new(name, false, msg),
        Err(e) => Check::error(name, e),
    }
}

pub fn fixtures_suite(text: &str) -> SuiteReport {
    let golden: Golden = match serde_json::from_str(text) {
        Ok(g) => g,
        Err(e) => return SuiteReport::new("fixtures", vec![Check::error("load fixtures", e)]),
    };
    let mut checks: Vec<Check> = golden.spectra.iter().map(|g| golden_set_check("spectrum", g, false)).collect();
    checks.extend(golden.essential.iter().map(|g| golden_set_check("essential", g, true)));
    checks.extend(golden.matrices.iter().map(golden_matrix_check));
    SuiteReport::new("fixtures", checks)
}

// ---------------------------------------------------------------------------
// cross-engine agreement

/// Closed form, quasi-homogeneous radial integrals and the Galerkin diagonal agree
/// exactly for every monomial with entries `<= max_entry` in dimension `<= max_dim`
/// and every `alpha <= (alpha_cap, ..)`.
pub fn engines_agree(max_dim: usize, max_entry: u32, alpha_cap: u32) -> Check {
    let name = format!("monomials dim<={max_dim} entries<={max_entry} alpha<={alpha_cap}");
    let mut jobs = Vec::new();
    for dim in 1..=max_dim {
        for n in box_lattice(dim, max_entry) {
            for m in box_lattice(dim, max_entry) {
                jobs.push((n.clone(), m));
            }
        }
    }
    let outcome: Result<Vec<usize>, String> = jobs
        .par_iter()
        .map(|(n, m)| {
            let dim = n.dim();
            let sym = PolySymbol::monomial(Coefficient::one(), n.clone(), m.clone());
            let trunc = BasisTruncation::new(dim, alpha_cap).map_err(|e| e.to_string())?;
            let mat = assemble(&sym, &trunc).map_err(|e| e.to_string())?;
            if !mat.is_diagonal() {
                return Err(format!("{sym}: compression is not diagonal"));
            }
            let diag = mat.exact_diagonal().ok_or_else(|| format!("{sym}: diagonal is not rational"))?;
            let qh = QuasiHomogeneousSymbol::monomial(n, m).map_err(|e| e.to_string())?;
            for (i, alpha) in trunc.indices().iter().enumerate() {
                let l = lambda_value(n, m, alpha, &Subset::full(dim)).map_err(|e| e.to_string())?;
                if diag[i] != complex_real(l.value().clone()) {
                    return Err(format!("{sym} at {alpha}: galerkin {} vs closed form {l}", diag[i]));
                }
                let q = qh_eigenvalue(&qh, alpha, Evaluation::Exact).map_err(|e| e.to_string())?;
                if q.value != QhValue::Exact(l.clone()) {
                    return Err(format!("{sym} at {alpha}: radial {:?} vs closed form {l}", q.value));
                }
            }
            Ok(trunc.size())
        })
        .collect();
    match outcome {
        Ok(counts) => Check::new(
            name,
            true,
            format!("{} symbols, {} exact triple comparisons", counts.len(), counts.iter().sum::<usize>()),
        ),
        Err(e) => Check::new(name, false, e),
    }
}

pub const REFERENCE_SYMBOLS: [&str; 3] = ["zb1", "zb1*zb2", "zb1*(zb2+1)"];

/// `T_{|psi|^2} - T_{conj psi} T_psi` against the direct Gram assembly, entrywise.
pub fn toeplitz_identity(symbols: &[&str], n: u32) -> Check {
    let name = format!("{} at N={n}", symbols.join(", "));
    for s in symbols {
        let run = || -> Result<bool, String> {
            let sym: PolySymbol = s.parse().map_err(|e: hankel_spectra::Error| e.to_string())?;
            let trunc = BasisTruncation::new(sym.dim(), n).map_err(|e| e.to_string())?;
            let a = assemble(&sym, &trunc).map_err(|e| e.to_string())?;
            let b = assemble_toeplitz_identity(&sym, &trunc).map_err(|e| e.to_string())?;
            Ok(matches!(a.entries(), Entries::Exact(_)) && a.entries() == b.entries())
        };
        match run() {
            Ok(true) => {}
            Ok(false) => return Check::new(name, false, format!("{s}: assemblies differ")),
            Err(e) => return Check::error(name, format!("{s}: {e}")),
        }
    }
    Check::new(name, true, "exact entrywise equality")
}

// ---------------------------------------------------------------------------
// essential spectrum

fn brute_force_values(n: &MultiIndex, m: &MultiIndex, subsets: &[Subset], cap: u32) -> BTreeSet<ExactScalar> {
    let dim = n.dim();
    let mut out = BTreeSet::new();
    for b in subsets {
        for alpha in box_lattice(dim, cap) {
            // coordinates outside B do not enter the value
            if (0..dim).any(|k| !b.contains(k) && alpha.get(k) != 0) {
                continue;
            }
            out.insert(lambda_value(n, m, &alpha, b).expect("dimensions match"));
        }
    }
    out
}

/// For a coordinate the symbol ignores every value is essential; otherwise the
/// essential set drops exactly the values only attained on the full index set.
pub fn essential_checks(cap: u32) -> Vec<Check> {
    let mut checks = Vec::new();
    let single = MonomialSymbol::from_vecs(vec![0, 0], vec![1, 0]).expect("valid");
    let mismatch = (0..=cap).find(|&c| {
        let s = enumerate_spectrum(&single, c).expect("dim 2");
        let e = enumerate_essential_spectrum(&single, c).expect("dim 2");
        s.values() != e.values()
    });
    checks.push(Check::new(
        format!("zb1 on the bidisc: essential = spectrum for caps 0..={cap}"),
        mismatch.is_none(),
        mismatch.map_or_else(|| "sets equal at every cap".to_string(), |c| format!("sets differ at cap {c}")),
    ));

    let sym = MonomialSymbol::from_vecs(vec![0, 0], vec![1, 1]).expect("valid");
    let (n, m) = (sym.holo.clone(), sym.antiholo.clone());
    let full = brute_force_values(&n, &m, &[Subset::full(2)], cap);
    let mut proper =
        brute_force_values(&n, &m, &[Subset::new(vec![0], 2).unwrap(), Subset::new(vec![1], 2).unwrap()], cap);
    proper.insert(ExactScalar::zero());
    let full_only: BTreeSet<_> = full.difference(&proper).cloned().collect();
    let spectrum: BTreeSet<_> = enumerate_spectrum(&sym, cap).expect("dim 2").values().into_iter().collect();
    let essential: BTreeSet<_> = enumerate_essential_spectrum(&sym, cap).expect("dim 2").values().into_iter().collect();
    let excluded: BTreeSet<_> = spectrum.difference(&essential).cloned().collect();
    checks.push(Check::new(
        format!("zb1*zb2: essential = zero and proper-subset limits at cap {cap}"),
        essential == proper,
        format!("{} essential values, {} by brute force", essential.len(), proper.len()),
    ));
    checks.push(Check::new(
        format!("zb1*zb2: excluded = full-index-only values at cap {cap}"),
        excluded == full_only && !full_only.is_empty(),
        format!("{} excluded, {} full-index-only", excluded.len(), full_only.len()),
    ));
    checks
}

// ---------------------------------------------------------------------------
// boundary behaviour

/// Relative variation of both slice-norm profiles of `zb1^2*zb2^3`.
pub fn constant_slices(n: u32, samples: usize) -> Check {
    let name = format!("zb1^2*zb2^3 slice norms constant at N={n}, {samples} samples");
    let sym: PolySymbol = "zb1^2*zb2^3".parse().expect("valid");
    let mut worst = 0.0f64;
    for coord in [1, 2] {
        match slice_norm_profile(&sym, coord, samples, n) {
            Ok(p) => worst = worst.max(p.relative_variation()),
            Err(e) => return Check::error(name, e),
        }
    }
    Check::new(name, worst < 1e-10, format!("max relative variation {worst:e}"))
}

/// `zb1*(zb2+1)`: the prediction contains `[0, 2]` and the largest eigenvalue gap of
/// the compression inside `[0.2, 1.8]` shrinks strictly with `N`.
pub fn interval_evidence(caps: &[u32]) -> Vec<Check> {
    let sym: PolySymbol = "zb1*(zb2+1)".parse().expect("valid");
    let cfg = PredictionConfig { degree_cap: 8, samples: 64, ..PredictionConfig::default() };
    let prediction = match hankel_spectra::boundary::analyze(&sym, 2, &cfg, 1e-6) {
        Ok(a) => Check::new(
            "zb1*(zb2+1): prediction contains [0, 2]",
            a.prediction.contains_interval(0.0, 2.0, 1e-9),
            format!("{} predicted intervals", a.prediction.intervals.len()),
        ),
        Err(e) => Check::error("zb1*(zb2+1): prediction contains [0, 2]", e),
    };
    let trend_name = format!("zb1*(zb2+1): max gap in [0.2, 1.8] decreasing over N={caps:?}");
    let trend = match gap_trend(&sym, 0.2, 1.8, caps) {
        Ok(g) => {
            let gaps: Vec<f64> = g.iter().map(|r| r.max_gap).collect();
            let ok = gaps.windows(2).all(|w| w[1] < w[0]);
            Check::new(trend_name, ok, format!("gaps {gaps:?}"))
        }
        Err(e) => Check::error(trend_name, e),
    };
    vec![prediction, trend]
}

fn lipschitz_check() -> Check {
    let sym: PolySymbol = "zb1*(zb2+1) + z1*zb2^2".parse().expect("valid");
    let pairs = [(0.0, 0.3), (1.0, 2.5), (3.0, 3.1), (4.0, 6.0)];
    let mut worst = f64::NEG_INFINITY;
    for (t1, t2) in pairs {
        match lipschitz_sample(&sym, 2, t1, t2, 8) {
            Ok(s) => worst = worst.max(s.difference - s.bound),
            Err(e) => return Check::error("slice norms are Lipschitz in q", e),
        }
    }
    Check::new("slice norms are Lipschitz in q", worst <= 1e-12, format!("max excess {worst:e}"))
}

pub fn boundary_suite() -> SuiteReport {
    let mut checks = vec![constant_slices(12, 64)];
    checks.extend(interval_evidence(&[8, 12, 16]));
    checks.push(lipschitz_check());
    SuiteReport::new("boundary", checks)
}

// ---------------------------------------------------------------------------
// Weyl residuals

pub const WEYL_POINTS: [f64; 3] = [0.5, 0.7, 0.9];

/// Residuals of `e_0 (x) k_p` for `zb1` on the bidisc at `lambda = 1/2`, required to
/// decrease strictly along the schedule.
pub fn weyl_trend() -> Check {
    let name = "zb1 on the bidisc: residuals at lambda=1/2 decrease for |p| = 0.5, 0.7, 0.9";
    let sym = "zb1".parse::<PolySymbol>().expect("valid").with_dim(2).expect("valid");
    let points: Vec<Complex64> = WEYL_POINTS.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    match weyl_schedule(&sym, 0.5, 0, &points, 0) {
        Ok(rs) => {
            let res: Vec<f64> = rs.iter().map(|r| r.residual).collect();
            let caps: Vec<u32> = rs.iter().map(|r| r.degree_cap).collect();
            let ok = res.windows(2).all(|w| w[1] < w[0]);
            Check::new(name, ok, format!("residuals {res:?} at N={caps:?}"))
        }
        Err(e) => Check::error(name, e),
    }
}

// ---------------------------------------------------------------------------
// numerical hygiene

pub const HYGIENE_SYMBOLS: [&str; 6] = [
    "zb1",
    "zb1*(zb2+1)",
    "zb1*zb2 + zb1",
    "(1/2+i)*zb1^2*z2 - z1*zb1 + 3*zb2",
    "zb1^3 + i*z1*zb1^2",
    "0.3*zb1*zb2*zb3 + z2*zb3^2",
];

/// Every compression (exact and float) is Hermitian to `1e-13` relative to its
/// largest entry and has eigenvalues `>= -1e-10`.
pub fn compression_hygiene(n: u32) -> Check {
    let name = format!("compressions Hermitian and PSD at N={n}");
    let mut worst_dev = 0.0f64;
    let mut worst_eig = f64::INFINITY;
    let mut count = 0;
    for s in HYGIENE_SYMBOLS {
        let sym: PolySymbol = s.parse().expect("valid");
        let n = if sym.dim() > 2 { n.min(4) } else { n };
        for arithmetic in [Arithmetic::Auto, Arithmetic::Float] {
            let run = || -> hankel_spectra::Result<(f64, f64)> {
                let mat = assemble_with(&sym, &BasisTruncation::new(sym.dim(), n)?, arithmetic)?;
                let scale = mat.to_dense().iter().map(|z| z.norm()).fold(1.0f64, f64::max);
                let e = eigenvalues(&mat)?;
                Ok((mat.hermitian_deviation() / scale, e.first().copied().unwrap_or(0.0)))
            };
            match run() {
                Ok((d, e)) => {
                    worst_dev = worst_dev.max(d);
                    worst_eig = worst_eig.min(e);
                    count += 1;
                }
                Err(e) => return Check::error(name, format!("{s}: {e}")),
            }
        }
    }
    Check::new(
        name,
        worst_dev <= 1e-13 && worst_eig >= -1e-10,
        format!("{count} matrices, max deviation {worst_dev:e}, min eigenvalue {worst_eig:e}"),
    )
}

fn poly(coeffs: &[(i64, i64)]) -> RadialFactor {
    RadialFactor::Polynomial(coeffs.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect())
}

/// Quadrature with `nodes` and `2 nodes` agrees to `1e-10` on polynomial profiles.
pub fn quadrature_doubling(nodes: usize) -> Check {
    let name = format!("radial quadrature {nodes} vs {} nodes", 2 * nodes);
    let mut symbols = Vec::new();
    for (n, m) in [(vec![0], vec![1]), (vec![1, 0], vec![0, 2]), (vec![2, 1], vec![1, 3])] {
        symbols.push(QuasiHomogeneousSymbol::monomial(&MultiIndex::from(n), &MultiIndex::from(m)).expect("valid"));
    }
    let profiles = [
        (RadialProfile::Separable(vec![poly(&[(1, 1), (0, 1), (-1, 2)])]), vec![-1]),
        (
            RadialProfile::Separable(vec![poly(&[(0, 1), (1, 1), (3, 4)]), poly(&[(2, 1), (0, 1), (0, 1), (1, 3)])]),
            vec![1, -2],
        ),
    ];
    for (profile, w) in profiles {
        symbols.push(QuasiHomogeneousSymbol::new(profile, Winding::new(w).expect("valid")).expect("valid"));
    }
    let mut worst = 0.0f64;
    for sym in &symbols {
        for alpha in box_lattice(sym.dim(), 3) {
            let run = |k| qh_eigenvalue(sym, &alpha, Evaluation::Quadrature { nodes: k }).map(|v| v.value.to_f64());
            match (run(nodes), run(2 * nodes)) {
                (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
                (Err(e), _) | (_, Err(e)) => return Check::error(name, e),
            }
        }
    }
    Check::new(name, worst < 1e-10, format!("{} symbols, max change {worst:e}", symbols.len()))
}

pub fn hygiene_checks(nodes: usize) -> Vec<Check> {
    vec![compression_hygiene(6), quadrature_doubling(nodes)]
}

// ---------------------------------------------------------------------------
// matrix dumps

/// A dump must carry the symbol's hash and reproduce a fresh assembly: exactly for
/// rational dumps, to `1e-15` relative for float dumps.
pub fn matrix_dump_check(text: &str, sym: &PolySymbol) -> Check {
    let dump = match MatrixDump::parse(text) {
        Ok(d) => d,
        Err(e) => return Check::error("parse dump", e),
    };
    let name = format!("dump dim={} N={} against {sym}", dump.dim, dump.degree_cap);
    if dump.symbol_hash != symbol_hash(sym) || dump.dim != sym.dim() {
        return Check::new(name, false, "symbol hash or dimension does not match");
    }
    let arithmetic = match dump.entries {
        Entries::Exact(_) => Arithmetic::Exact,
        Entries::Float(_) => Arithmetic::Float,
    };
    let mat = match BasisTruncation::new(dump.dim, dump.degree_cap).and_then(|t| assemble_with(sym, &t, arithmetic)) {
        Ok(m) => m,
        Err(e) => return Check::error(name, e),
    };
    if mat.inner_cap != dump.inner_cap {
        return Check::new(name, false, format!("inner cap {} vs {}", dump.inner_cap, mat.inner_cap));
    }
    let ok = match (&dump.entries, mat.entries()) {
        (Entries::Exact(a), Entries::Exact(b)) => a == b,
        (Entries::Float(a), Entries::Float(b)) => {
            let scale = b.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= 1e-15 * scale)
        }
        _ => false,
    };
    Check::new(name, ok, if ok { "entries reproduced" } else { "entries differ" })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_pass() {
        let s = fixtures_suite(GOLDEN);
        assert!(s.passed, "{:#?}", s.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }

    #[test]
    fn corrupted_fixture_fails_its_check() {
        let bad = GOLDEN.replacen("\"1/20\"", "\"1/21\"", 1);
        let s = fixtures_suite(&bad);
        assert!(!s.passed);
        assert_eq!(s.checks.iter().filter(|c| !c.passed).count(), 1);
        assert!(!fixtures_suite("{not json").passed);
    }

    #[test]
    fn small_engine_sweep() {
        assert!(engines_agree(2, 1, 2).passed);
    }

    #[test]
    fn essential_sets() {
        for c in essential_checks(3) {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn dump_round_trip_and_mismatch() {
        let sym: PolySymbol = "zb1*(zb2+1)".parse().unwrap();
        for arithmetic in [Arithmetic::Exact, Arithmetic::Float] {
            let mat = assemble_with(&sym, &BasisTruncation::new(2, 3).unwrap(), arithmetic).unwrap();
            assert!(matrix_dump_check(&mat.dump(), &sym).passed);
        }
        let mat = assemble(&sym, &BasisTruncation::new(2, 3).unwrap()).unwrap();
        let other: PolySymbol = "zb1*zb2".parse().unwrap();
        assert!(!matrix_dump_check(&mat.dump(), &other).passed);
    }

    #[test]
    fn unknown_suite_is_usage_error() {
        let opts = VerifyOptions { suites: vec!["nope".into()], ..VerifyOptions::default() };
        assert!(run(&opts, &RunConfig::default()).is_err());
        let opts = VerifyOptions { suites: vec!["matrix".into()], ..VerifyOptions::default() };
        assert!(run(&opts, &RunConfig::default()).is_err());
    }
}
