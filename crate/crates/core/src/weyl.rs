//! Weyl test vectors `g(z') k_p(z_n)` built from the normalized Bergman kernel of
//! the disc in the last coordinate.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galerkin::{assemble, BasisTruncation};
use crate::symbol::PolySymbol;

/// Kernel mass a truncation has to retain.
pub const MIN_KERNEL_MASS: f64 = 0.99;

/// Normalized kernel `k_p` in the orthonormal basis `sqrt(j+1) z^j` of `A^2(D)`.
#[derive(Clone, Debug)]
pub struct KernelVector {
    pub p: Complex64,
    pub coefficients: Vec<Complex64>,
}

impl KernelVector {
    pub fn new(p: Complex64, degree: u32) -> Result<Self> {
        if p.norm() >= 1.0 {
            return Err(Error::KernelPointOutside { modulus: p.norm() });
        }
        let scale = 1.0 - p.norm_sqr();
        let pb = p.conj();
        let mut pow = Complex64::new(1.0, 0.0);
        let mut coefficients = Vec::with_capacity(degree as usize + 1);
        for j in 0..=degree {
            coefficients.push(pow * scale * ((j + 1) as f64).sqrt());
            pow *= pb;
        }
        Ok(Self { p, coefficients })
    }

    /// Squared norm of the truncation; tends to 1 with the degree.
    pub fn mass(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `1 - (N+2) x^{N+1} + (N+1) x^{N+2}` with `x = |p|^2`: the retained kernel mass.
pub fn kernel_mass(modulus: f64, degree: u32) -> f64 {
    let x = modulus * modulus;
    let n = degree as f64;
    1.0 - (n + 2.0) * x.powf(n + 1.0) + (n + 1.0) * x.powf(n + 2.0)
}

/// Smallest degree whose truncated kernel keeps at least `mass`.
pub fn min_degree_for_mass(modulus: f64, mass: f64) -> Result<u32> {
    if !(0.0..1.0).contains(&modulus) {
        return Err(Error::KernelPointOutside { modulus });
    }
    (0..100_000u32)
        .find(|&n| kernel_mass(modulus, n) >= mass)
        .ok_or_else(|| Error::Invalid(format!("no degree retains mass {mass} at |p| = {modulus}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylResidual {
    pub residual: f64,
    pub kernel_mass: f64,
    pub degree_cap: u32,
    pub p: [f64; 2],
    pub lambda: f64,
}

/// `||(M - lambda) f||` for the normalized truncation `f` of `g (x) k_p`.
///
/// `g` lives on the `(dim-1)`-variable basis with the same degree cap as `trunc`
/// (a single coefficient when `dim = 1`).
pub fn weyl_residual(
    sym: &PolySymbol,
    lambda: f64,
    g: &[Complex64],
    p: Complex64,
    trunc: &BasisTruncation,
) -> Result<WeylResidual> {
    let dim = trunc.dim();
    if sym.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: sym.dim() });
    }
    let n_cap = trunc.degree_cap();
    let g_basis = if dim > 1 { Some(BasisTruncation::new(dim - 1, n_cap)?) } else { None };
    let g_len = g_basis.as_ref().map_or(1, BasisTruncation::size);
    if g.len() != g_len {
        return Err(Error::DimensionMismatch { expected: g_len, found: g.len() });
    }
    let g_norm = g.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (g_norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm: g_norm });
    }
    let kernel = KernelVector::new(p, n_cap)?;
    let mass = kernel.mass();
    if mass < MIN_KERNEL_MASS {
        return Err(Error::KernelTruncated { mass, required: min_degree_for_mass(p.norm(), MIN_KERNEL_MASS)? });
    }
    let size = trunc.size();
    let mut f = vec![Complex64::new(0.0, 0.0); size];
    for (i, alpha) in trunc.indices().iter().enumerate() {
        let last = alpha.get(dim - 1) as usize;
        let gi = match &g_basis {
            Some(b) => b.position(&alpha.drop_coord(dim - 1)).expect("slice of the box is in the box"),
            None => 0,
        };
        f[i] = g[gi] * kernel.coefficients[last];
    }
    let norm = f.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut f {
        *c /= norm;
    }
    let m = assemble(sym, trunc)?;
    let mut residual = 0.0;
    for i in 0..size {
        let mut acc = -f[i] * lambda;
        for (j, fj) in f.iter().enumerate() {
            if fj.norm_sqr() != 0.0 {
                acc += m.get(i, j) * fj;
            }
        }
        residual += acc.norm_sqr();
    }
    Ok(WeylResidual { residual: residual.sqrt(), kernel_mass: mass, degree_cap: n_cap, p: [p.re, p.im], lambda })
}

/// Residuals along a schedule of kernel points, each with the smallest degree cap
/// (at least `min_degree`) that keeps the required kernel mass.
pub fn weyl_schedule(
    sym: &PolySymbol,
    lambda: f64,
    g_index: usize,
    points: &[Complex64],
    min_degree: u32,
) -> Result<Vec<WeylResidual>> {
    points
        .iter()
        .map(|&p| {
            let n = min_degree_for_mass(p.norm(), MIN_KERNEL_MASS)?.max(min_degree);
            let trunc = BasisTruncation::new(sym.dim(), n)?;
            let len = if sym.dim() > 1 { BasisTruncation::new(sym.dim() - 1, n)?.size() } else { 1 };
            if g_index >= len {
                return Err(Error::DimensionMismatch { expected: len, found: g_index + 1 });
            }
            let mut g = vec![Complex64::new(0.0, 0.0); len];
            g[g_index] = Complex64::new(1.0, 0.0);
            weyl_residual(sym, lambda, &g, p, &trunc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::top_eigenvalue;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kernel_mass_closed_form() {
        for (r, n) in [(0.5, 3), (0.9, 31), (0.3, 0)] {
            let k = KernelVector::new(Complex64::from_polar(r, 0.7), n).unwrap();
            assert!((k.mass() - kernel_mass(r, n)).abs() < 1e-14);
        }
        let n = min_degree_for_mass(0.9, 0.99).unwrap();
        assert!(kernel_mass(0.9, n) >= 0.99 && kernel_mass(0.9, n - 1) < 0.99);
        assert!(KernelVector::new(c(1.0), 3).is_err());
    }

    #[test]
    fn holomorphic_symbol_has_zero_residual() {
        let sym: PolySymbol = "z1*z2 + z2^2".parse().unwrap();
        let t = BasisTruncation::new(2, 20).unwrap();
        let mut g = vec![c(0.0); 21];
        g[3] = c(1.0);
        let r = weyl_residual(&sym, 0.0, &g, c(0.6), &t).unwrap();
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn far_lambda_bounded_below() {
        let sym = "zb1".parse::<PolySymbol>().unwrap().with_dim(2).unwrap();
        let t = BasisTruncation::new(2, 20).unwrap();
        let mut g = vec![c(0.0); 21];
        g[0] = c(1.0);
        let r = weyl_residual(&sym, 10.0, &g, c(0.5), &t).unwrap();
        let norm = top_eigenvalue(&assemble(&sym, &t).unwrap()).unwrap();
        assert!(r.residual >= (10.0 - norm).abs() - 1e-12);
        assert!(r.residual > 8.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let sym = "zb1".parse::<PolySymbol>().unwrap().with_dim(2).unwrap();
        let t = BasisTruncation::new(2, 5).unwrap();
        let mut g = vec![c(0.0); 6];
        g[0] = c(1.0);
        assert!(matches!(weyl_residual(&sym, 0.5, &g, c(0.9), &t), Err(Error::KernelTruncated { .. })));
        g[0] = c(2.0);
        assert!(matches!(weyl_residual(&sym, 0.5, &g, c(0.1), &t), Err(Error::NotNormalized { .. })));
        assert!(matches!(weyl_residual(&sym, 0.5, &g[..3], c(0.1), &t), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn univariate_residual_moves_toward_boundary_limit() {
        // On the disc the kernel escapes to high degree where the eigenvalues of
        // zbar decay, so the residual against 0 shrinks as |p| grows.
        let sym: PolySymbol = "zb1".parse().unwrap();
        let rs = weyl_schedule(&sym, 0.0, 0, &[c(0.5), c(0.7), c(0.9)], 0).unwrap();
        assert!(rs[0].residual > rs[1].residual && rs[1].residual > rs[2].residual, "{rs:?}");
    }
}
