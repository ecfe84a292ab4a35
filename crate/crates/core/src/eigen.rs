//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::galerkin::CompressionMatrix;

pub const MAX_SWEEPS: usize = 50;
pub const OFF_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-13;

fn off_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of the row-major Hermitian `n x n` matrix `a`, ascending.
pub fn hermitian_eigenvalues(a: &[Complex64], n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n {
        return Err(Error::DimensionMismatch { expected: n * n, found: a.len() });
    }
    let scale = a.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let mut dev = 0.0f64;
    for i in 0..n {
        dev = dev.max(a[i * n + i].im.abs());
        for j in i + 1..n {
            dev = dev.max((a[i * n + j] - a[j * n + i].conj()).norm());
        }
    }
    if dev > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let mut a = a.to_vec();
    let frob = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = OFF_TOL * frob;
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off <= target || frob == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Annihilate `a[p][q]`: a phase on column `q` makes it real, then a real rotation.
fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let b = a[p * n + q];
    let r = b.norm();
    if r == 0.0 {
        return;
    }
    let u = b / r;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() { 0.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ub = u.conj();
    // columns: A <- A G with G = diag(1, conj u) * [[c, s], [-s, c]]
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * ub * s;
        a[k * n + q] = akp * s + akq * ub * c;
    }
    // rows: A <- G^H A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - aqk * u * s;
        a[q * n + k] = apk * s + aqk * u * c;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
}

/// Ascending eigenvalues of a compression matrix.
pub fn eigenvalues(mat: &CompressionMatrix) -> Result<Vec<f64>> {
    if mat.is_diagonal() {
        let mut d: Vec<f64> = (0..mat.size()).map(|i| mat.get(i, i).re).collect();
        d.sort_by(f64::total_cmp);
        return Ok(d);
    }
    hermitian_eigenvalues(&mat.to_dense(), mat.size())
}

/// Largest eigenvalue, i.e. the compressed `||H_psi||^2`.
pub fn top_eigenvalue(mat: &CompressionMatrix) -> Result<f64> {
    Ok(eigenvalues(mat)?.last().copied().unwrap_or(0.0))
}
