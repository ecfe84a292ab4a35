//! Boundary slices `psi_q(z') = psi(z', q)` with `|q| = 1`, their Hankel norms, and
//! the essential-spectrum sets they generate.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{eigenvalues, top_eigenvalue};
use crate::error::{Error, Result};
use crate::galerkin::{assemble, BasisTruncation};
use crate::monomial::enumerate_spectrum;
use crate::symbol::{Coefficient, PolySymbol};

pub const DEFAULT_SAMPLES: usize = 256;
/// Relative variation below which a profile counts as constant.
pub const CONSTANT_REL_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct BoundarySlice {
    pub q: Coefficient,
    /// 1-based coordinate that was frozen.
    pub coord: usize,
    pub symbol: PolySymbol,
}

fn check_coord(sym: &PolySymbol, coord: usize) -> Result<usize> {
    if sym.dim() < 2 {
        return Err(Error::SliceOfUnivariate);
    }
    if coord == 0 || coord > sym.dim() {
        return Err(Error::CoordinateOutOfRange { index: coord, dim: sym.dim() });
    }
    Ok(coord - 1)
}

/// Freeze the 1-based coordinate `coord` at the boundary point `q`.
pub fn slice_symbol(sym: &PolySymbol, q: &Coefficient, coord: usize) -> Result<BoundarySlice> {
    let c = check_coord(sym, coord)?;
    let modulus = q.to_c64().norm();
    if (modulus - 1.0).abs() > 1e-14 {
        return Err(Error::NotUnimodular { modulus });
    }
    Ok(BoundarySlice { q: q.clone(), coord, symbol: sym.substitute(c, q)? })
}

/// `e^{2 pi i j / n}`, exact at the four real/imaginary points.
pub fn root_of_unity(j: usize, n: usize) -> Coefficient {
    match (4 * j).is_multiple_of(n).then(|| 4 * j / n % 4) {
        Some(0) => Coefficient::int(1),
        Some(1) => Coefficient::imag_unit(),
        Some(2) => Coefficient::int(-1),
        Some(3) => Coefficient::imag_unit().neg(),
        _ => Coefficient::unit_float(2.0 * PI * j as f64 / n as f64),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileSample {
    pub theta: f64,
    pub lambda: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceNormProfile {
    pub coord: usize,
    pub samples: Vec<ProfileSample>,
    pub truncation: BasisTruncation,
    pub min: f64,
    pub max: f64,
    pub constant: bool,
    /// Compression norms only grow with the degree cap, so these under-estimate.
    pub note: &'static str,
}

impl SliceNormProfile {
    pub fn relative_variation(&self) -> f64 {
        if self.max == 0.0 {
            0.0
        } else {
            (self.max - self.min) / self.max
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.lambda).collect()
    }
}

/// Compressed `||H_{psi_q}||^2` at one boundary point.
pub fn slice_norm(sym: &PolySymbol, coord: usize, q: &Coefficient, degree_cap: u32) -> Result<f64> {
    let slice = slice_symbol(sym, q, coord)?;
    if slice.symbol.is_holomorphic() {
        return Ok(0.0);
    }
    let trunc = BasisTruncation::new(sym.dim() - 1, degree_cap)?;
    top_eigenvalue(&assemble(&slice.symbol, &trunc)?)
}

pub fn slice_norm_profile(
    sym: &PolySymbol,
    coord: usize,
    num_samples: usize,
    degree_cap: u32,
) -> Result<SliceNormProfile> {
    check_coord(sym, coord)?;
    if num_samples < 4 {
        return Err(Error::Invalid(format!("need at least 4 samples, got {num_samples}")));
    }
    let truncation = BasisTruncation::new(sym.dim() - 1, degree_cap)?;
    let samples = (0..num_samples)
        .into_par_iter()
        .map(|j| {
            let lambda = slice_norm(sym, coord, &root_of_unity(j, num_samples), degree_cap)?;
            Ok(ProfileSample { theta: 2.0 * PI * j as f64 / num_samples as f64, lambda })
        })
        .collect::<Result<Vec<_>>>()?;
    let min = samples.iter().map(|s| s.lambda).fold(f64::INFINITY, f64::min);
    let max = samples.iter().map(|s| s.lambda).fold(f64::NEG_INFINITY, f64::max);
    let constant = max - min <= CONSTANT_REL_TOL * max;
    Ok(SliceNormProfile {
        coord,
        samples,
        truncation,
        min,
        max,
        constant,
        note: "top eigenvalue of the slice compression; non-decreasing in the degree cap",
    })
}

// ---------------------------------------------------------------------------
// |chi|^2 on the circle

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    f(0.5 * (a + b)).max(fc).max(fd)
}

/// `[min, max]` of `|chi(e^{i theta})|^2` from a grid refined by golden-section search.
pub fn circle_range(chi: &PolySymbol, samples: usize) -> Result<(f64, f64)> {
    if chi.dim() != 1 {
        return Err(Error::NotUnivariate { dim: chi.dim() });
    }
    let samples = samples.max(4);
    let h = 2.0 * PI / samples as f64;
    let f = |t: f64| chi.eval(&[Complex64::from_polar(1.0, t)]).norm_sqr();
    let grid: Vec<f64> = (0..samples).map(|j| f(j as f64 * h)).collect();
    let imax = (0..samples).max_by(|&a, &b| grid[a].total_cmp(&grid[b])).unwrap();
    let imin = (0..samples).min_by(|&a, &b| grid[a].total_cmp(&grid[b])).unwrap();
    let t_max = imax as f64 * h;
    let t_min = imin as f64 * h;
    let hi = golden_max(f, t_max - h, t_max + h).max(grid[imax]);
    let lo = (-golden_max(|t| -f(t), t_min - h, t_min + h)).min(grid[imin]).max(0.0);
    Ok((lo, hi))
}

// ---------------------------------------------------------------------------
// predictions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionSource {
    /// `{|chi(q)|^2 mu}` for `psi = phi(z') chi(z_n)`.
    ProductSymbol,
    /// Union over coordinates for `psi = prod chi_k(z_k)`.
    SeparableSymbol,
    /// `[min lambda_q, max lambda_q]` from the slice-norm profile.
    SliceNormRange,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictedPoint {
    pub value: f64,
    pub source: PredictionSource,
    /// `mu` came from a compression rather than the closed form.
    pub approximate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictedInterval {
    pub lo: f64,
    pub hi: f64,
    pub mu: Option<f64>,
    pub source: PredictionSource,
    pub approximate: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EssentialSetPrediction {
    pub points: Vec<PredictedPoint>,
    pub intervals: Vec<PredictedInterval>,
}

impl EssentialSetPrediction {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.intervals.is_empty()
    }

    /// Whether `[lo, hi]` lies inside one predicted interval (up to `tol`).
    pub fn contains_interval(&self, lo: f64, hi: f64, tol: f64) -> bool {
        self.intervals.iter().any(|i| i.lo <= lo + tol && i.hi >= hi - tol)
    }

    pub fn contains_point(&self, v: f64, tol: f64) -> bool {
        self.points.iter().any(|p| (p.value - v).abs() <= tol)
            || self.intervals.iter().any(|i| i.lo - tol <= v && v <= i.hi + tol)
    }

    fn push_scaled(&mut self, mu: f64, lo: f64, hi: f64, source: PredictionSource, approximate: bool) {
        let (a, b) = (mu * lo, mu * hi);
        if b - a > 1e-14 * b.max(1.0) {
            self.intervals.push(PredictedInterval { lo: a, hi: b, mu: Some(mu), source, approximate });
        } else if !self.points.iter().any(|p| (p.value - a).abs() <= 1e-15 * a.max(1.0)) {
            self.points.push(PredictedPoint { value: a, source, approximate });
        }
    }

    fn finish(mut self) -> Self {
        self.points.sort_by(|a, b| a.value.total_cmp(&b.value));
        self.intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PredictionConfig {
    /// Per-coordinate cap for the closed-form spectrum of monomial factors.
    pub alpha_cap: u32,
    /// Degree cap of compressions used for non-monomial factors.
    pub degree_cap: u32,
    pub samples: usize,
}

impl Default for PredictionConfig {
    fn default() -> Self {
        Self { alpha_cap: 10, degree_cap: 12, samples: DEFAULT_SAMPLES }
    }
}

/// `sigma(H*_phi H_phi)`: closed form for monomials (scaled by `|c|^2`), otherwise the
/// compression spectrum. The flag marks approximate values.
pub fn factor_spectrum(phi: &PolySymbol, cfg: &PredictionConfig) -> Result<(Vec<f64>, bool)> {
    if phi.is_zero() || phi.is_holomorphic() {
        return Ok((vec![0.0], false));
    }
    if let Some((c, mono)) = phi.as_monomial() {
        let scale = c.norm_sqr().to_c64().re;
        let set = enumerate_spectrum(&mono, cfg.alpha_cap)?;
        return Ok((set.values().iter().map(|v| v.to_f64() * scale).collect(), false));
    }
    let trunc = BasisTruncation::new(phi.dim(), cfg.degree_cap)?;
    let mut e = eigenvalues(&assemble(phi, &trunc)?)?;
    e.iter_mut().for_each(|x| *x = x.max(0.0));
    e.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok((e, true))
}

pub fn product_essential_prediction(
    phi: &PolySymbol,
    chi: &PolySymbol,
    cfg: &PredictionConfig,
) -> Result<EssentialSetPrediction> {
    let (lo, hi) = circle_range(chi, cfg.samples)?;
    let (mus, approximate) = factor_spectrum(phi, cfg)?;
    let mut out = EssentialSetPrediction::default();
    for mu in mus {
        out.push_scaled(mu, lo, hi, PredictionSource::ProductSymbol, approximate);
    }
    Ok(out.finish())
}

pub fn separable_essential_prediction(
    factors: &[PolySymbol],
    cfg: &PredictionConfig,
) -> Result<EssentialSetPrediction> {
    if factors.len() < 2 {
        return Err(Error::Invalid(format!("need at least two factors, got {}", factors.len())));
    }
    let ranges = factors.iter().map(|f| circle_range(f, cfg.samples)).collect::<Result<Vec<_>>>()?;
    let mut out = EssentialSetPrediction::default();
    for (j, f) in factors.iter().enumerate() {
        let (lo, hi) =
            ranges.iter().enumerate().filter(|&(k, _)| k != j).fold((1.0, 1.0), |(a, b), (_, &(l, h))| (a * l, b * h));
        let (mus, approximate) = factor_spectrum(f, cfg)?;
        for mu in mus {
            out.push_scaled(mu, lo, hi, PredictionSource::SeparableSymbol, approximate);
        }
    }
    Ok(out.finish())
}

/// Interval `[min lambda_q, max lambda_q]` (a point when the profile is constant).
pub fn slice_range_prediction(profile: &SliceNormProfile) -> EssentialSetPrediction {
    let mut out = EssentialSetPrediction::default();
    if profile.constant {
        out.points.push(PredictedPoint {
            value: profile.max,
            source: PredictionSource::SliceNormRange,
            approximate: true,
        });
    } else {
        out.intervals.push(PredictedInterval {
            lo: profile.min,
            hi: profile.max,
            mu: None,
            source: PredictionSource::SliceNormRange,
            approximate: true,
        });
    }
    out
}

// ---------------------------------------------------------------------------
// containment against a compression spectrum

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub value: f64,
    pub nearest: Option<f64>,
    pub distance: Option<f64>,
    pub within_tol: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapRecord {
    pub interval: [f64; 2],
    pub max_gap: f64,
    pub eigenvalues_inside: usize,
    #[serde(rename = "at_N")]
    pub at_n: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompressionSummary {
    #[serde(rename = "N")]
    pub n: u32,
    pub eigenvalues: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub prediction: EssentialSetPrediction,
    pub compression: CompressionSummary,
    pub points: Vec<PointCheck>,
    pub gaps: Vec<GapRecord>,
}

/// Largest distance between neighbours in `{lo} u (spectrum n [lo, hi]) u {hi}`.
pub fn max_gap(spectrum: &[f64], lo: f64, hi: f64) -> (f64, usize) {
    let mut pts: Vec<f64> = spectrum.iter().copied().filter(|&x| x >= lo && x <= hi).collect();
    let inside = pts.len();
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    let gap = pts.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    (gap, inside)
}

pub fn containment_report(
    prediction: &EssentialSetPrediction,
    spectrum: &[f64],
    tol: f64,
    degree_cap: u32,
) -> Result<ContainmentReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let points = prediction
        .points
        .iter()
        .map(|p| {
            let nearest = spectrum.iter().copied().min_by(|a, b| (a - p.value).abs().total_cmp(&(b - p.value).abs()));
            let distance = nearest.map(|n| (n - p.value).abs());
            PointCheck { value: p.value, nearest, distance, within_tol: distance.is_some_and(|d| d <= tol) }
        })
        .collect();
    let gaps = prediction
        .intervals
        .iter()
        .map(|i| {
            let (g, inside) = max_gap(spectrum, i.lo, i.hi);
            GapRecord { interval: [i.lo, i.hi], max_gap: g, eigenvalues_inside: inside, at_n: degree_cap }
        })
        .collect();
    Ok(ContainmentReport {
        prediction: prediction.clone(),
        compression: CompressionSummary { n: degree_cap, eigenvalues: spectrum.to_vec() },
        points,
        gaps,
    })
}

/// Max gap of the compression spectrum of `sym` inside `[lo, hi]` at each degree cap.
pub fn gap_trend(sym: &PolySymbol, lo: f64, hi: f64, caps: &[u32]) -> Result<Vec<GapRecord>> {
    caps.iter()
        .map(|&n| {
            let e = eigenvalues(&assemble(sym, &BasisTruncation::new(sym.dim(), n)?)?)?;
            let (g, inside) = max_gap(&e, lo, hi);
            Ok(GapRecord { interval: [lo, hi], max_gap: g, eigenvalues_inside: inside, at_n: n })
        })
        .collect()
}

/// Largest distance from an eigenvalue at cap `n` inside `[lo, hi]` to the nearest
/// eigenvalue at cap `n + step`.
pub fn interior_shift(sym: &PolySymbol, n: u32, step: u32, lo: f64, hi: f64) -> Result<f64> {
    let spec = |cap: u32| -> Result<Vec<f64>> { eigenvalues(&assemble(sym, &BasisTruncation::new(sym.dim(), cap)?)?) };
    let (a, b) = (spec(n)?, spec(n + step)?);
    Ok(a.iter()
        .filter(|&&x| x >= lo && x <= hi)
        .map(|x| b.iter().map(|y| (y - x).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

// ---------------------------------------------------------------------------
// continuity of lambda_q

#[derive(Clone, Debug, Serialize)]
pub struct LipschitzSample {
    pub theta: [f64; 2],
    pub difference: f64,
    pub bound: f64,
}

impl LipschitzSample {
    pub fn holds(&self, slack: f64) -> bool {
        self.difference <= self.bound + slack
    }
}

/// `|lambda_q1 - lambda_q2|` against `(||H_q1|| + ||H_q2||) ||psi_q1 - psi_q2||_inf`,
/// with the sup norm bounded by the coefficient l1 norm.
pub fn lipschitz_sample(sym: &PolySymbol, coord: usize, t1: f64, t2: f64, degree_cap: u32) -> Result<LipschitzSample> {
    let (q1, q2) = (Coefficient::unit_float(t1), Coefficient::unit_float(t2));
    let s1 = slice_symbol(sym, &q1, coord)?.symbol;
    let s2 = slice_symbol(sym, &q2, coord)?.symbol;
    let l1 = slice_norm(sym, coord, &q1, degree_cap)?;
    let l2 = slice_norm(sym, coord, &q2, degree_cap)?;
    let sup = s1.sub(&s2)?.coefficient_l1();
    Ok(LipschitzSample {
        theta: [t1, t2],
        difference: (l1 - l2).abs(),
        bound: (l1.max(0.0).sqrt() + l2.max(0.0).sqrt()) * sup,
    })
}

// ---------------------------------------------------------------------------
// full analysis

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryAnalysis {
    pub coord: usize,
    pub profile: SliceNormProfile,
    pub prediction: EssentialSetPrediction,
    pub report: ContainmentReport,
}

/// Profile, predictions (product form when `psi` factors through `coord`, plus the
/// slice-norm range) and the containment report at degree cap `degree_cap`.
pub fn analyze(sym: &PolySymbol, coord: usize, cfg: &PredictionConfig, tol: f64) -> Result<BoundaryAnalysis> {
    let c = check_coord(sym, coord)?;
    let profile = slice_norm_profile(sym, coord, cfg.samples, cfg.degree_cap)?;
    let mut prediction = slice_range_prediction(&profile);
    if let Some((phi, chi)) = sym.factor_coordinate(c) {
        let product = product_essential_prediction(&phi, &chi, cfg)?;
        prediction.points.extend(product.points);
        prediction.intervals.extend(product.intervals);
        prediction = prediction.finish();
    }
    let spectrum = eigenvalues(&assemble(sym, &BasisTruncation::new(sym.dim(), cfg.degree_cap)?)?)?;
    let report = containment_report(&prediction, &spectrum, tol, cfg.degree_cap)?;
    Ok(BoundaryAnalysis { coord, profile, prediction, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolySymbol {
        s.parse().unwrap()
    }

    fn cfg() -> PredictionConfig {
        PredictionConfig { alpha_cap: 8, degree_cap: 8, samples: 64 }
    }

    #[test]
    fn slices_at_boundary() {
        let s = p("zb1*(zb2+1)");
        assert_eq!(slice_symbol(&s, &Coefficient::int(1), 2).unwrap().symbol, p("2*zb1"));
        assert!(slice_symbol(&s, &Coefficient::int(-1), 2).unwrap().symbol.is_zero());
        assert!(matches!(slice_symbol(&p("zb1"), &Coefficient::int(1), 1), Err(Error::SliceOfUnivariate)));
        assert!(matches!(slice_symbol(&s, &Coefficient::int(2), 2), Err(Error::NotUnimodular { .. })));
        assert!(matches!(slice_symbol(&s, &Coefficient::int(1), 3), Err(Error::CoordinateOutOfRange { .. })));
        // unimodular factor
        let t = 0.37;
        let sl = slice_symbol(&p("zb1^2*zb2^3"), &Coefficient::unit_float(t), 2).unwrap().symbol;
        let (c, _) = sl.as_monomial().unwrap();
        assert!((c.to_c64() - Complex64::from_polar(1.0, -3.0 * t)).norm() < 1e-15);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(0, 8), Coefficient::int(1));
        assert_eq!(root_of_unity(2, 8), Coefficient::imag_unit());
        assert_eq!(root_of_unity(4, 8), Coefficient::int(-1));
        assert!(!root_of_unity(1, 8).is_exact());
        assert!((root_of_unity(1, 6).to_c64() - Complex64::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn monomial_profiles_are_constant() {
        let s = p("zb1^2*zb2^3");
        for coord in [1, 2] {
            let prof = slice_norm_profile(&s, coord, 16, 8).unwrap();
            assert!(prof.constant && prof.relative_variation() < 1e-10);
        }
    }

    #[test]
    fn mixed_profile_follows_scaling_law() {
        // lambda_q = |1 + conj q|^2 * 1/2
        let prof = slice_norm_profile(&p("zb1*(zb2+1)"), 2, 32, 6).unwrap();
        assert!(!prof.constant);
        for s in &prof.samples {
            let want = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -s.theta)).norm_sqr() / 2.0;
            assert!((s.lambda - want).abs() < 1e-12, "{} {}", s.theta, s.lambda);
        }
        assert!((prof.max - 2.0).abs() < 1e-12 && prof.min.abs() < 1e-12);
    }

    #[test]
    fn holomorphic_profile_vanishes() {
        let prof = slice_norm_profile(&p("z1*z2"), 1, 8, 4).unwrap();
        assert!(prof.values().iter().all(|&v| v == 0.0));
        assert!(prof.constant);
    }

    #[test]
    fn circle_range_of_one_plus_conj() {
        let (lo, hi) = circle_range(&p("zb1 + 1"), 256).unwrap();
        assert!(lo.abs() < 1e-12 && (hi - 4.0).abs() < 1e-12);
        // |2 + e^{-it} + i e^{-2it}|^2 has no grid-aligned extremum; compare a fine scan
        let chi = p("2 + zb1 + i*zb1^2");
        let (lo, hi) = circle_range(&chi, 37).unwrap();
        let f = |t: f64| chi.eval(&[Complex64::from_polar(1.0, t)]).norm_sqr();
        let scan: Vec<f64> = (0..200_000).map(|j| f(2.0 * PI * j as f64 / 200_000.0)).collect();
        let (smin, smax) = scan.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        assert!((lo - smin).abs() < 1e-8 && (hi - smax).abs() < 1e-8, "{lo} {smin} {hi} {smax}");
        assert!(circle_range(&p("zb1*zb2"), 8).is_err());
    }

    #[test]
    fn product_prediction_contains_unit_interval_image() {
        let pred = product_essential_prediction(&p("zb1"), &p("zb1 + 1"), &cfg()).unwrap();
        assert!(pred.contains_interval(0.0, 2.0, 1e-12));
        // unimodular chi leaves the spectrum unchanged
        let pred = product_essential_prediction(&p("zb1"), &p("i"), &cfg()).unwrap();
        assert!(pred.intervals.is_empty());
        let vals: Vec<f64> = pred.points.iter().map(|p| p.value).collect();
        assert!(vals.iter().any(|v| (v - 0.5).abs() < 1e-15) && vals.iter().any(|v| (v - 1.0 / 6.0).abs() < 1e-15));
        // holomorphic phi
        let pred = product_essential_prediction(&p("z1^2"), &p("zb1 + 1"), &cfg()).unwrap();
        assert_eq!(pred.points.len(), 1);
        assert_eq!(pred.points[0].value, 0.0);
        assert!(pred.intervals.is_empty());
    }

    #[test]
    fn separable_predictions() {
        let pred = separable_essential_prediction(&[p("zb1"), p("zb1")], &cfg()).unwrap();
        assert!(pred.intervals.is_empty());
        assert!(pred.contains_point(0.5, 1e-15) && pred.contains_point(0.0, 0.0));
        let pred = separable_essential_prediction(&[p("zb1"), p("1 + zb1")], &cfg()).unwrap();
        assert!(pred.contains_interval(0.0, 2.0, 1e-12));
        let pred = separable_essential_prediction(&[p("zb1"), PolySymbol::zero(1)], &cfg()).unwrap();
        assert!(pred.intervals.is_empty());
        assert!(pred.points.iter().all(|p| p.value == 0.0));
    }

    #[test]
    fn containment_points_and_empty_report() {
        let pred = product_essential_prediction(&p("zb1"), &p("1"), &cfg()).unwrap();
        let spec = eigenvalues(&assemble(&p("zb1"), &BasisTruncation::new(1, 20).unwrap()).unwrap()).unwrap();
        let r = containment_report(&pred, &spec, 1e-10, 20).unwrap();
        // 0 is only a limit point on the disc; every other predicted value is a diagonal entry
        assert!(r.points.iter().all(|c| c.within_tol == (c.value > 0.0)), "{:?}", r.points);
        let r = containment_report(&EssentialSetPrediction::default(), &spec, 1e-10, 20).unwrap();
        assert!(r.points.is_empty() && r.gaps.is_empty());
    }

    #[test]
    fn gap_includes_endpoints() {
        assert_eq!(max_gap(&[0.5, 0.6], 0.0, 1.0), (0.5, 2));
        assert_eq!(max_gap(&[], 0.2, 0.4).1, 0);
    }

    #[test]
    fn lipschitz_bound_holds() {
        let s = p("zb1*(zb2+1) + 1/2*z1*zb2^2");
        for (a, b) in [(0.0, 0.1), (1.0, 2.5), (3.0, 3.01)] {
            let l = lipschitz_sample(&s, 2, a, b, 6).unwrap();
            assert!(l.holds(1e-12), "{l:?}");
        }
    }

    #[test]
    fn analysis_of_example_symbol() {
        let a = analyze(&p("zb1*(zb2+1)"), 2, &cfg(), 1e-8).unwrap();
        assert!(!a.profile.constant);
        assert!(a.prediction.contains_interval(0.0, 2.0, 1e-9));
        assert!(!a.report.gaps.is_empty());
    }
}
