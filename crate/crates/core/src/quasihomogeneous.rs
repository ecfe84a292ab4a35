//! Eigenvalues for quasi-homogeneous symbols `psi(z) = f(|z|) e^{i k.theta}` on the polydisc.
//!
//! Each monomial `z^alpha` is an eigenvector. When `alpha + k` leaves the orthant the
//! eigenvalue is `||z^alpha psi||^2 / ||z^alpha||^2`; otherwise the squared projection
//! coefficient onto `z^(alpha+k)` is subtracted.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{box_lattice, MultiIndex, Winding};
use crate::rational::{ratio_to_f64, ExactScalar};

pub const DEFAULT_NODES: usize = 64;
pub const CLUSTER_TOL: f64 = 1e-9;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type JointFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// One univariate radial factor `f_k(r)` on `[0, 1]`.
#[derive(Clone)]
pub enum RadialFactor {
    /// Coefficients of `r^0, r^1, ...`.
    Polynomial(Vec<BigRational>),
    Sampled(ScalarFn),
}

impl RadialFactor {
    pub fn constant(c: i64) -> Self {
        Self::Polynomial(vec![BigRational::from_integer(c.into())])
    }

    /// `r^power`.
    pub fn power(power: usize) -> Self {
        let mut c = vec![BigRational::zero(); power + 1];
        c[power] = BigRational::one();
        Self::Polynomial(c)
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Self::Polynomial(c) => c.iter().rev().fold(0.0, |acc, a| acc * r + ratio_to_f64(a)),
            Self::Sampled(f) => f(r),
        }
    }

    fn squared(&self) -> Self {
        match self {
            Self::Polynomial(c) => {
                if c.is_empty() {
                    return Self::Polynomial(Vec::new());
                }
                let mut out = vec![BigRational::zero(); 2 * c.len() - 1];
                for (i, a) in c.iter().enumerate() {
                    for (j, b) in c.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                Self::Polynomial(out)
            }
            Self::Sampled(f) => {
                let f = f.clone();
                Self::Sampled(Arc::new(move |r| {
                    let v = f(r);
                    v * v
                }))
            }
        }
    }
}

impl fmt::Debug for RadialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            Self::Sampled(_) => f.write_str("Sampled(..)"),
        }
    }
}

/// Radial part `f(r_1, .., r_n)` of a quasi-homogeneous symbol.
#[derive(Clone)]
pub enum RadialProfile {
    /// `f(r) = prod_k f_k(r_k)`.
    Separable(Vec<RadialFactor>),
    /// General profile, integrated by tensor quadrature (dim <= 3).
    Joint { dim: usize, f: JointFn },
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Separable(fs) => f.debug_tuple("Separable").field(fs).finish(),
            Self::Joint { dim, .. } => write!(f, "Joint {{ dim: {dim} }}"),
        }
    }
}

impl RadialProfile {
    pub fn dim(&self) -> usize {
        match self {
            Self::Separable(fs) => fs.len(),
            Self::Joint { dim, .. } => *dim,
        }
    }

    pub fn is_separable(&self) -> bool {
        matches!(self, Self::Separable(_))
    }

    /// Exact rational path available.
    pub fn is_exact(&self) -> bool {
        match self {
            Self::Separable(fs) => fs.iter().all(|f| matches!(f, RadialFactor::Polynomial(_))),
            Self::Joint { .. } => false,
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        match self {
            Self::Separable(fs) => fs.iter().any(|f| match f {
                RadialFactor::Polynomial(c) => c.iter().all(Zero::is_zero),
                RadialFactor::Sampled(_) => false,
            }),
            Self::Joint { .. } => false,
        }
    }

    fn squared(&self) -> Self {
        match self {
            Self::Separable(fs) => Self::Separable(fs.iter().map(RadialFactor::squared).collect()),
            Self::Joint { dim, f } => {
                let f = f.clone();
                Self::Joint {
                    dim: *dim,
                    f: Arc::new(move |r| {
                        let v = f(r);
                        v * v
                    }),
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuasiHomogeneousSymbol {
    pub profile: RadialProfile,
    pub winding: Winding,
}

impl QuasiHomogeneousSymbol {
    pub fn new(profile: RadialProfile, winding: Winding) -> Result<Self> {
        if profile.dim() != winding.dim() {
            return Err(Error::DimensionMismatch { expected: profile.dim(), found: winding.dim() });
        }
        if profile.dim() == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { profile, winding })
    }

    /// `z^n zbar^m` written as `|z|^(n+m) e^{i (n-m).theta}`.
    pub fn monomial(holo: &MultiIndex, antiholo: &MultiIndex) -> Result<Self> {
        antiholo.check_dim(holo.dim())?;
        let factors = (0..holo.dim()).map(|k| RadialFactor::power((holo.get(k) + antiholo.get(k)) as usize)).collect();
        let winding = Winding::new((0..holo.dim()).map(|k| holo.get(k) as i64 - antiholo.get(k) as i64).collect())?;
        Self::new(RadialProfile::Separable(factors), winding)
    }

    pub fn dim(&self) -> usize {
        self.winding.dim()
    }
}

/// `||z^beta||^2 = coefficient * pi^dim` on the polydisc.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonomialNorm {
    pub beta: MultiIndex,
    pub coefficient: ExactScalar,
}

impl MonomialNorm {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64() * PI.powi(self.beta.dim() as i32)
    }
}

pub fn monomial_norm_sq(beta: &MultiIndex) -> MonomialNorm {
    let den: BigInt = beta.entries().iter().map(|&b| BigInt::from(b as u64 + 1)).product();
    MonomialNorm { beta: beta.clone(), coefficient: ExactScalar::new(BigRational::new(BigInt::one(), den)) }
}

/// Product weight `prod (beta_k + 1)`, the reciprocal of `||z^beta||^2 / pi^n`.
pub(crate) fn basis_weight(beta: &MultiIndex) -> BigInt {
    beta.entries().iter().map(|&b| BigInt::from(b as u64 + 1)).product()
}

/// Value of `int_{D^n} |w|^exponent f(|w|) dV(w)`.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialIntegral {
    /// `coefficient * (2 pi)^dim`.
    Exact {
        coefficient: BigRational,
        dim: usize,
    },
    Approx(f64),
}

impl RadialIntegral {
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact { coefficient, dim } => ratio_to_f64(coefficient) * (2.0 * PI).powi(*dim as i32),
            Self::Approx(v) => *v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    /// Rational arithmetic; fails for profiles that are not rational polynomials.
    Exact,
    /// Gauss–Legendre in `r` with the given number of nodes per factor.
    Quadrature { nodes: usize },
}

impl Default for Evaluation {
    fn default() -> Self {
        Self::Quadrature { nodes: DEFAULT_NODES }
    }
}

impl Evaluation {
    /// Exact when the profile allows it, otherwise quadrature with default nodes.
    pub fn best_for(profile: &RadialProfile) -> Self {
        if profile.is_exact() {
            Self::Exact
        } else {
            Self::default()
        }
    }
}

fn poly_moment_exact(coeffs: &[BigRational], exponent: i64) -> Result<BigRational> {
    // int_0^1 r^(e+1) sum c_j r^j dr = sum c_j / (e + j + 2)
    let mut acc = BigRational::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = exponent + j as i64 + 2;
        if d <= 0 {
            return Err(Error::NonIntegrable { exponent, power: j });
        }
        acc += c / BigRational::from_integer(d.into());
    }
    Ok(acc)
}

fn check_bounded(f: &dyn Fn(f64) -> f64) -> Result<()> {
    for i in 0..=256 {
        let r = i as f64 / 256.0;
        if !f(r).is_finite() {
            return Err(Error::UnboundedProfile { at: r });
        }
    }
    Ok(())
}

fn factor_moment_quad(factor: &RadialFactor, exponent: i64, rule: &crate::quadrature::GaussLegendre) -> Result<f64> {
    match factor {
        RadialFactor::Polynomial(coeffs) => {
            let mut shifted = Vec::with_capacity(coeffs.len());
            for (j, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let p = exponent + 1 + j as i64;
                if p < 0 {
                    return Err(Error::NonIntegrable { exponent, power: j });
                }
                shifted.push((p as i32, ratio_to_f64(c)));
            }
            Ok(rule.integrate(|r| shifted.iter().map(|&(p, c)| c * r.powi(p)).sum()))
        }
        RadialFactor::Sampled(f) => {
            if exponent + 1 < 0 {
                return Err(Error::NonIntegrable { exponent, power: 0 });
            }
            check_bounded(f.as_ref())?;
            let p = (exponent + 1) as i32;
            Ok(rule.integrate(|r| r.powi(p) * f(r)))
        }
    }
}

/// `prod_k 2 pi int_0^1 r^(e_k + 1) f_k(r) dr` for separable profiles; tensor
/// quadrature over `[0,1]^dim` for joint profiles with `dim <= 3`.
pub fn radial_integral(profile: &RadialProfile, exponent: &Winding, eval: Evaluation) -> Result<RadialIntegral> {
    if exponent.dim() != profile.dim() {
        return Err(Error::DimensionMismatch { expected: profile.dim(), found: exponent.dim() });
    }
    let dim = profile.dim();
    match (profile, eval) {
        (RadialProfile::Separable(factors), Evaluation::Exact) => {
            let mut coefficient = BigRational::one();
            for (f, &e) in factors.iter().zip(exponent.entries()) {
                match f {
                    RadialFactor::Polynomial(c) => coefficient *= poly_moment_exact(c, e)?,
                    RadialFactor::Sampled(_) => return Err(Error::NotExact),
                }
            }
            Ok(RadialIntegral::Exact { coefficient, dim })
        }
        (RadialProfile::Separable(factors), Evaluation::Quadrature { nodes }) => {
            let rule = crate::quadrature::GaussLegendre::new(nodes);
            let mut v = 1.0;
            for (f, &e) in factors.iter().zip(exponent.entries()) {
                v *= 2.0 * PI * factor_moment_quad(f, e, &rule)?;
            }
            Ok(RadialIntegral::Approx(v))
        }
        (RadialProfile::Joint { .. }, Evaluation::Exact) => Err(Error::NotExact),
        (RadialProfile::Joint { dim, f }, Evaluation::Quadrature { nodes }) => {
            if *dim > 3 {
                return Err(Error::NonSeparableTooLarge { dim: *dim });
            }
            if let Some(&e) = exponent.entries().iter().find(|&&e| e + 1 < 0) {
                return Err(Error::NonIntegrable { exponent: e, power: 0 });
            }
            let rule = crate::quadrature::GaussLegendre::new(nodes);
            let n = rule.len();
            let total = n.pow(*dim as u32);
            let mut r = vec![0.0; *dim];
            let mut acc = 0.0;
            for flat in 0..total {
                let mut idx = flat;
                let mut w = 1.0;
                for (rk, e) in r.iter_mut().zip(exponent.entries()) {
                    let i = idx % n;
                    idx /= n;
                    *rk = rule.nodes[i];
                    w *= rule.weights[i] * rk.powi((e + 1) as i32);
                }
                let v = f(&r);
                if !v.is_finite() {
                    return Err(Error::UnboundedProfile { at: r[0] });
                }
                acc += w * v;
            }
            Ok(RadialIntegral::Approx(acc * (2.0 * PI).powi(*dim as i32)))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `alpha + k` has a negative entry: the projection term vanishes.
    KernelBranch,
    /// `alpha + k` is a multi-index: the projection onto `z^(alpha+k)` is subtracted.
    ProjectionBranch,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum QhValue {
    Exact(ExactScalar),
    Approx(f64),
}

impl QhValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(v) => v.to_f64(),
            Self::Approx(v) => *v,
        }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QhEigenvalue {
    pub alpha: MultiIndex,
    pub value: QhValue,
    pub branch: Branch,
}

fn cs_tolerance(first: f64) -> f64 {
    1e-12 * first.abs().max(1.0)
}

/// Eigenvalue of `H*_psi H_psi` on `z^alpha`.
pub fn qh_eigenvalue(sym: &QuasiHomogeneousSymbol, alpha: &MultiIndex, eval: Evaluation) -> Result<QhEigenvalue> {
    alpha.check_dim(sym.dim())?;
    let dim = sym.dim();
    let squared = sym.profile.squared();
    let norm_exponent = Winding::zeros(dim).doubled_plus(alpha);
    let shifted = sym.winding.shift(alpha);
    let branch = if shifted.is_some() { Branch::ProjectionBranch } else { Branch::KernelBranch };

    let w_alpha = crate::quasihomogeneous::basis_weight(alpha);
    let scale = BigInt::from(2u32).pow(dim as u32);
    let first = radial_integral(&squared, &norm_exponent, eval)?;

    let value = match (first, &shifted) {
        (RadialIntegral::Exact { coefficient, .. }, _) => {
            // (2 pi)^n c / (pi^n / w) = 2^n c w
            let first = coefficient * BigRational::from_integer(&scale * &w_alpha);
            let value = match &shifted {
                None => first,
                Some(beta) => {
                    let proj = radial_integral(&sym.profile, &sym.winding.doubled_plus(alpha), eval)?;
                    let RadialIntegral::Exact { coefficient: c1, .. } = proj else {
                        unreachable!("exact evaluation returns exact integrals")
                    };
                    let w_beta = basis_weight(beta);
                    let second = &c1 * &c1 * BigRational::from_integer(&scale * &scale * &w_alpha * w_beta);
                    if second > first {
                        return Err(Error::CauchySchwarz { excess: ratio_to_f64(&(second - first)) });
                    }
                    first - second
                }
            };
            debug_assert!(!value.is_negative());
            QhValue::Exact(ExactScalar::new(value))
        }
        (first @ RadialIntegral::Approx(_), _) => {
            let norm_alpha = monomial_norm_sq(alpha).to_f64();
            let first = first.to_f64() / norm_alpha;
            let value = match &shifted {
                None => first,
                Some(beta) => {
                    let proj = radial_integral(&sym.profile, &sym.winding.doubled_plus(alpha), eval)?.to_f64();
                    let second = proj * proj / (norm_alpha * monomial_norm_sq(beta).to_f64());
                    if second > first + cs_tolerance(first) {
                        return Err(Error::CauchySchwarz { excess: second - first });
                    }
                    first - second
                }
            };
            QhValue::Approx(value)
        }
    };
    Ok(QhEigenvalue { alpha: alpha.clone(), value, branch })
}

/// Run of sorted eigenvalues whose successive gaps are below the cluster tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub lo: f64,
    pub hi: f64,
    pub members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct QhSpectrum {
    pub eigenvalues: Vec<QhEigenvalue>,
    /// Clusters with at least two members: numerical evidence of a limit point.
    pub clusters: Vec<Cluster>,
    pub alpha_cap: u32,
    pub cluster_tol: f64,
}

impl QhSpectrum {
    /// Sorted values with runs closer than `tol` collapsed to their first member.
    pub fn distinct_values(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for e in &self.eigenvalues {
            let v = e.value.to_f64();
            if out.last().is_none_or(|&l| v - l > tol) {
                out.push(v);
            }
        }
        out
    }
}

/// Every eigenvalue for `alpha <= alpha_cap` componentwise, sorted ascending with
/// limit-point clusters annotated.
pub fn qh_spectrum(sym: &QuasiHomogeneousSymbol, alpha_cap: u32, eval: Evaluation) -> Result<QhSpectrum> {
    let lattice = box_lattice(sym.dim(), alpha_cap);
    let mut eigenvalues = lattice.par_iter().map(|a| qh_eigenvalue(sym, a, eval)).collect::<Result<Vec<_>>>()?;
    eigenvalues.sort_by(|a, b| a.value.cmp_value(&b.value).then_with(|| a.alpha.cmp(&b.alpha)));

    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=eigenvalues.len() {
        let split =
            i == eigenvalues.len() || eigenvalues[i].value.to_f64() - eigenvalues[i - 1].value.to_f64() >= CLUSTER_TOL;
        if split {
            if i - start >= 2 {
                clusters.push(Cluster {
                    lo: eigenvalues[start].value.to_f64(),
                    hi: eigenvalues[i - 1].value.to_f64(),
                    members: i - start,
                });
            }
            start = i;
        }
    }
    Ok(QhSpectrum { eigenvalues, clusters, alpha_cap, cluster_tol: CLUSTER_TOL })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v.to_vec())
    }

    fn poly(c: &[i64]) -> RadialFactor {
        RadialFactor::Polynomial(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn monomial_norms() {
        assert_eq!(monomial_norm_sq(&mi(&[0, 0])).coefficient, ExactScalar::one());
        assert_eq!(monomial_norm_sq(&mi(&[1])).coefficient, ExactScalar::new(rat(1, 2)));
        assert_eq!(monomial_norm_sq(&mi(&[2, 3, 4])).coefficient, ExactScalar::new(rat(1, 60)));
    }

    #[test]
    fn monomial_norm_matches_cubature() {
        // int_{D^3} |z^(2,3,4)|^2 dV by polar Gauss–Legendre, independent of the closed form
        let rule = crate::quadrature::GaussLegendre::new(20);
        let v: f64 = [2i32, 3, 4].iter().map(|&b| 2.0 * PI * rule.integrate(|r| r.powi(2 * b + 1))).product();
        assert!((v - PI.powi(3) / 60.0).abs() < 1e-10);
    }

    #[test]
    fn radial_integral_examples() {
        let one = RadialProfile::Separable(vec![poly(&[1])]);
        for a in 0..5i64 {
            let r = radial_integral(&one, &Winding::new(vec![2 * a]).unwrap(), Evaluation::Exact).unwrap();
            let expect = PI / (a as f64 + 1.0);
            assert!((r.to_f64() - expect).abs() < 1e-14);
        }
        let r2 = RadialProfile::Separable(vec![poly(&[0, 0, 1])]);
        let v = radial_integral(&r2, &Winding::zeros(1), Evaluation::Exact).unwrap();
        assert_eq!(v, RadialIntegral::Exact { coefficient: rat(1, 4), dim: 1 });
        assert!((v.to_f64() - PI / 2.0).abs() < 1e-15);

        let sep = RadialProfile::Separable(vec![poly(&[0, 1]), poly(&[1])]);
        let v = radial_integral(&sep, &Winding::new(vec![1, 0]).unwrap(), Evaluation::Exact).unwrap();
        // (2 pi * 1/4) * (2 pi * 1/2)
        assert!((v.to_f64() - PI * PI / 2.0).abs() < 1e-13);
        let q = radial_integral(&sep, &Winding::new(vec![1, 0]).unwrap(), Evaluation::default()).unwrap();
        assert!((q.to_f64() - PI * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_integrable_exponent_rejected() {
        let one = RadialProfile::Separable(vec![poly(&[1])]);
        let e = radial_integral(&one, &Winding::new(vec![-2]).unwrap(), Evaluation::Exact);
        assert!(matches!(e, Err(Error::NonIntegrable { .. })));
    }

    #[test]
    fn conjugate_symbol_kernel_branch() {
        let sym =
            QuasiHomogeneousSymbol::new(RadialProfile::Separable(vec![poly(&[0, 1])]), Winding::new(vec![-1]).unwrap())
                .unwrap();
        let e = qh_eigenvalue(&sym, &mi(&[0]), Evaluation::Exact).unwrap();
        assert_eq!(e.branch, Branch::KernelBranch);
        assert_eq!(e.value, QhValue::Exact(ExactScalar::new(rat(1, 2))));
    }

    #[test]
    fn holomorphic_power_vanishes() {
        for j in 1..4u32 {
            let sym = QuasiHomogeneousSymbol::monomial(&mi(&[j]), &mi(&[0])).unwrap();
            for a in 0..6 {
                let e = qh_eigenvalue(&sym, &mi(&[a]), Evaluation::Exact).unwrap();
                assert_eq!(e.value, QhValue::Exact(ExactScalar::zero()));
            }
        }
    }

    #[test]
    fn radial_square_profile() {
        let sym =
            QuasiHomogeneousSymbol::new(RadialProfile::Separable(vec![poly(&[0, 0, 1])]), Winding::zeros(1)).unwrap();
        let e = qh_eigenvalue(&sym, &mi(&[0]), Evaluation::Exact).unwrap();
        assert_eq!(e.value, QhValue::Exact(ExactScalar::new(rat(1, 12))));
        let f = qh_eigenvalue(&sym, &mi(&[0]), Evaluation::default()).unwrap();
        assert!((f.value.to_f64() - 1.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn pure_winding_symbol_against_simpson() {
        // psi = e^{i theta}: 1 - (int r^(2a+2))^2 (2pi)^2 / (||z^a||^2 ||z^(a+1)||^2)
        let sym =
            QuasiHomogeneousSymbol::new(RadialProfile::Separable(vec![poly(&[1])]), Winding::new(vec![1]).unwrap())
                .unwrap();
        let simpson = |f: &dyn Fn(f64) -> f64| {
            let n = 2000;
            let h = 1.0 / n as f64;
            let mut s = f(0.0) + f(1.0);
            for i in 1..n {
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
            }
            s * h / 3.0
        };
        for a in 0..6i32 {
            let m = 2.0 * PI * simpson(&|r: f64| r.powi(2 * a + 2));
            let n0 = 2.0 * PI * simpson(&|r: f64| r.powi(2 * a + 1));
            let n1 = 2.0 * PI * simpson(&|r: f64| r.powi(2 * a + 3));
            let oracle = 1.0 - m * m / (n0 * n1);
            let got = qh_eigenvalue(&sym, &mi(&[a as u32]), Evaluation::Exact).unwrap();
            assert!((got.value.to_f64() - oracle).abs() < 1e-9, "a={a}");
        }
        let first = qh_eigenvalue(&sym, &mi(&[0]), Evaluation::Exact).unwrap();
        assert_eq!(first.value, QhValue::Exact(ExactScalar::new(rat(1, 9))));
    }

    #[test]
    fn zero_profile_spectrum() {
        let sym =
            QuasiHomogeneousSymbol::new(RadialProfile::Separable(vec![poly(&[0])]), Winding::new(vec![2]).unwrap())
                .unwrap();
        let s = qh_spectrum(&sym, 5, Evaluation::Exact).unwrap();
        assert_eq!(s.distinct_values(0.0), vec![0.0]);
    }

    #[test]
    fn sampled_profile_matches_polynomial() {
        let sym_p = QuasiHomogeneousSymbol::new(
            RadialProfile::Separable(vec![poly(&[0, 0, 1])]),
            Winding::new(vec![-1]).unwrap(),
        )
        .unwrap();
        let sym_s = QuasiHomogeneousSymbol::new(
            RadialProfile::Separable(vec![RadialFactor::Sampled(Arc::new(|r| r * r))]),
            Winding::new(vec![-1]).unwrap(),
        )
        .unwrap();
        for a in 0..5 {
            let p = qh_eigenvalue(&sym_p, &mi(&[a]), Evaluation::Exact).unwrap().value.to_f64();
            let s = qh_eigenvalue(&sym_s, &mi(&[a]), Evaluation::default()).unwrap().value.to_f64();
            assert!((p - s).abs() < 1e-13);
        }
    }

    #[test]
    fn unbounded_sampled_profile_rejected() {
        let sym = QuasiHomogeneousSymbol::new(
            RadialProfile::Separable(vec![RadialFactor::Sampled(Arc::new(|r| 1.0 / r))]),
            Winding::zeros(1),
        )
        .unwrap();
        assert!(matches!(qh_eigenvalue(&sym, &mi(&[0]), Evaluation::default()), Err(Error::UnboundedProfile { .. })));
    }

    #[test]
    fn joint_profile_tensor_quadrature() {
        // f(r1, r2) = r1 * r2 is separable in disguise; compare with the separable path.
        let joint = QuasiHomogeneousSymbol::new(
            RadialProfile::Joint { dim: 2, f: Arc::new(|r: &[f64]| r[0] * r[1]) },
            Winding::new(vec![-1, 0]).unwrap(),
        )
        .unwrap();
        let sep = QuasiHomogeneousSymbol::new(
            RadialProfile::Separable(vec![poly(&[0, 1]), poly(&[0, 1])]),
            Winding::new(vec![-1, 0]).unwrap(),
        )
        .unwrap();
        for a in [mi(&[0, 0]), mi(&[1, 2]), mi(&[3, 1])] {
            let j = qh_eigenvalue(&joint, &a, Evaluation::default()).unwrap().value.to_f64();
            let s = qh_eigenvalue(&sep, &a, Evaluation::Exact).unwrap().value.to_f64();
            assert!((j - s).abs() < 1e-12, "{a}: {j} vs {s}");
        }
        let big = RadialProfile::Joint { dim: 4, f: Arc::new(|_: &[f64]| 1.0) };
        assert!(matches!(
            radial_integral(&big, &Winding::zeros(4), Evaluation::default()),
            Err(Error::NonSeparableTooLarge { dim: 4 })
        ));
    }

    #[test]
    fn clusters_flag_repeated_values() {
        // zbar_1 on the bidisc: every alpha_2 repeats the same eigenvalue
        let sym = QuasiHomogeneousSymbol::monomial(&mi(&[0, 0]), &mi(&[1, 0])).unwrap();
        let s = qh_spectrum(&sym, 3, Evaluation::Exact).unwrap();
        assert_eq!(s.eigenvalues.len(), 16);
        assert_eq!(s.clusters.len(), 4);
        assert!(s.clusters.iter().all(|c| c.members == 4));
    }
}
