//! Compression of `H*_psi H_psi` to the truncated orthonormal basis
//! `e_alpha = z^alpha / ||z^alpha||`, `max alpha <= N`, for polynomial symbols.
//!
//! Entries are assembled from monomial orthogonality on the polydisc:
//! `<z^a zbar^b, z^c zbar^d> = pi^n prod 1/(a+d+1)` when `a - b = c - d`, else 0.
//! Powers of `pi` cancel, and the orthonormal entry is a rational multiple of
//! `sqrt(prod (alpha+1)(beta+1))`, which is kept as an exact surd.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::index::{box_lattice, MultiIndex};
use crate::rational::{complex_conj, complex_is_zero, complex_to_f64, fmt_ratio, parse_ratio, ComplexRational};
use crate::symbol::{Coefficient, PolySymbol};

/// Largest basis accepted by [`assemble`].
pub const MAX_BASIS: usize = 20_000;

/// Graded-lexicographic basis `{alpha : max alpha <= N}` of `A^2(D^dim)`.
#[derive(Clone, Debug)]
pub struct BasisTruncation {
    dim: usize,
    degree_cap: u32,
    indices: Vec<MultiIndex>,
    lookup: HashMap<MultiIndex, usize>,
}

impl BasisTruncation {
    pub fn new(dim: usize, degree_cap: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let size = (degree_cap as u128 + 1).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if size > MAX_BASIS as u128 {
            return Err(Error::BasisTooLarge { size: size.min(usize::MAX as u128) as usize, limit: MAX_BASIS });
        }
        let indices = box_lattice(dim, degree_cap);
        let lookup = indices.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Ok(Self { dim, degree_cap, indices, lookup })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.lookup.get(alpha).copied()
    }
}

impl PartialEq for BasisTruncation {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.degree_cap == other.degree_cap
    }
}

impl Serialize for BasisTruncation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            dim: usize,
            degree_cap: u32,
            size: usize,
        }
        View { dim: self.dim, degree_cap: self.degree_cap, size: self.size() }.serialize(s)
    }
}

/// Smallest inner cap for which the projection sum is exact on the truncated basis.
pub fn required_inner_cap(sym: &PolySymbol, degree_cap: u32) -> u32 {
    degree_cap + sym.max_coord_degree()
}

// ---------------------------------------------------------------------------
// scalar plumbing shared by the exact and float paths

pub(crate) trait Field:
    Clone + Send + Sync + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn zero() -> Self;
    fn conj(&self) -> Self;
    /// `1 / prod dens`.
    fn recip(dens: &[u64]) -> Self;
    fn from_u64(v: u64) -> Self;
    fn is_zero(&self) -> bool;
}

impl Field for ComplexRational {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn conj(&self) -> Self {
        complex_conj(self)
    }
    fn recip(dens: &[u64]) -> Self {
        let d: BigInt = dens.iter().map(|&x| BigInt::from(x)).product();
        Complex::new(BigRational::new(BigInt::one(), d), BigRational::zero())
    }
    fn from_u64(v: u64) -> Self {
        Complex::new(BigRational::from_integer(v.into()), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        complex_is_zero(self)
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn recip(dens: &[u64]) -> Self {
        Complex64::new(1.0 / dens.iter().map(|&x| x as f64).product::<f64>(), 0.0)
    }
    fn from_u64(v: u64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term<S> {
    pub c: S,
    pub n: Vec<u32>,
    pub m: Vec<u32>,
}

pub(crate) fn exact_terms(sym: &PolySymbol) -> Option<Vec<Term<ComplexRational>>> {
    sym.terms()
        .map(|(k, c)| match c {
            Coefficient::Exact(c) => {
                Some(Term { c: c.clone(), n: k.holo.entries().to_vec(), m: k.antiholo.entries().to_vec() })
            }
            Coefficient::Float(_) => None,
        })
        .collect()
}

pub(crate) fn float_terms(sym: &PolySymbol) -> Vec<Term<Complex64>> {
    sym.terms()
        .map(|(k, c)| Term { c: c.to_c64(), n: k.holo.entries().to_vec(), m: k.antiholo.entries().to_vec() })
        .collect()
}

/// `<z^a zbar^b, z^c zbar^d> / pi^n`, as the list of per-coordinate denominators.
pub(crate) fn monomial_ip(a: &[u32], b: &[u32], c: &[u32], d: &[u32]) -> Option<Vec<u64>> {
    let mut dens = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        if a[k] as u64 + d[k] as u64 != b[k] as u64 + c[k] as u64 {
            return None;
        }
        dens.push(a[k] as u64 + d[k] as u64 + 1);
    }
    Some(dens)
}

fn plus(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `gamma = alpha + n - m` if it is a multi-index.
fn shifted(alpha: &[u32], n: &[u32], m: &[u32]) -> Option<Vec<u32>> {
    alpha.iter().zip(n).zip(m).map(|((&a, &n), &m)| (a + n).checked_sub(m)).collect()
}

pub(crate) fn weight(alpha: &[u32]) -> u64 {
    alpha.iter().map(|&a| a as u64 + 1).product()
}

/// `P(psi z^alpha) / pi^n` expanded as `sum_gamma coeff_gamma z^gamma`.
fn projection<S: Field>(terms: &[Term<S>], alpha: &[u32], inner_cap: u32) -> BTreeMap<Vec<u32>, S> {
    let mut out: BTreeMap<Vec<u32>, S> = BTreeMap::new();
    for t in terms {
        let Some(gamma) = shifted(alpha, &t.n, &t.m) else { continue };
        if gamma.iter().any(|&g| g > inner_cap) {
            continue;
        }
        let dens: Vec<u64> = alpha.iter().zip(&t.n).map(|(&a, &n)| a as u64 + n as u64 + 1).collect();
        let v = t.c.clone() * S::recip(&dens);
        match out.remove(&gamma) {
            Some(old) => {
                out.insert(gamma, old + v);
            }
            None => {
                out.insert(gamma, v);
            }
        }
    }
    out
}

/// `<H_psi z^alpha, H_psi z^beta> / pi^n` in the monomial (non-normalized) basis.
pub(crate) fn gram_monomial<S: Field>(terms: &[Term<S>], alpha: &[u32], beta: &[u32], inner_cap: u32) -> S {
    let mut first = S::zero();
    for t in terms {
        let a = plus(alpha, &t.n);
        for s in terms {
            let c = plus(beta, &s.n);
            if let Some(dens) = monomial_ip(&a, &t.m, &c, &s.m) {
                first = first + t.c.clone() * s.c.conj() * S::recip(&dens);
            }
        }
    }
    let pa = projection(terms, alpha, inner_cap);
    let pb = projection(terms, beta, inner_cap);
    let mut second = S::zero();
    for (gamma, va) in &pa {
        if let Some(vb) = pb.get(gamma) {
            second = second + va.clone() * vb.conj() * S::from_u64(weight(gamma));
        }
    }
    first - second
}

// ---------------------------------------------------------------------------
// exact surd entries

/// `coefficient * sqrt(radicand)` with square-free `radicand`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurdEntry {
    pub coefficient: ComplexRational,
    pub radicand: u64,
}

impl SurdEntry {
    pub fn zero() -> Self {
        Self { coefficient: <ComplexRational as Field>::zero(), radicand: 1 }
    }

    pub fn is_zero(&self) -> bool {
        complex_is_zero(&self.coefficient)
    }

    pub fn conj(&self) -> Self {
        Self { coefficient: complex_conj(&self.coefficient), radicand: self.radicand }
    }

    pub fn to_c64(&self) -> Complex64 {
        complex_to_f64(&self.coefficient) * (self.radicand as f64).sqrt()
    }

    /// The value when it is rational (radicand 1 or zero coefficient).
    pub fn as_rational(&self) -> Option<&ComplexRational> {
        (self.radicand == 1 || self.is_zero()).then_some(&self.coefficient)
    }

    fn scaled(g: ComplexRational, alpha: &Split, beta: &Split) -> Self {
        if complex_is_zero(&g) {
            return Self::zero();
        }
        let common = alpha.squarefree.gcd(&beta.squarefree);
        let factor =
            BigRational::from_integer(BigInt::from(alpha.root) * BigInt::from(beta.root) * BigInt::from(common));
        Self {
            coefficient: Complex::new(g.re * &factor, g.im * &factor),
            radicand: (alpha.squarefree / common) * (beta.squarefree / common),
        }
    }
}

impl fmt::Display for SurdEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", fmt_ratio(&self.coefficient.re), fmt_ratio(&self.coefficient.im), self.radicand)
    }
}

/// `w = root^2 * squarefree`.
#[derive(Clone, Copy, Debug)]
struct Split {
    root: u64,
    squarefree: u64,
}

fn split_square(mut w: u64) -> Split {
    let (mut root, mut sf) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= w {
        let mut e = 0;
        while w.is_multiple_of(p) {
            w /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            sf *= p;
        }
        p += 1;
    }
    Split { root, squarefree: sf * w }
}

// ---------------------------------------------------------------------------
// compression matrix

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    ExactRational,
    Float,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ExactRational => "rational",
            Self::Float => "float",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact whenever every coefficient is rational.
    #[default]
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Exact(Vec<SurdEntry>),
    Float(Vec<Complex64>),
}

/// Dense row-major matrix with `(i, j) = <H e_j, H e_i>`, so it acts on coefficient
/// vectors as `H*_psi H_psi`.
#[derive(Clone, Debug)]
pub struct CompressionMatrix {
    pub truncation: BasisTruncation,
    pub symbol: PolySymbol,
    pub inner_cap: u32,
    entries: Entries,
}

impl CompressionMatrix {
    pub fn size(&self) -> usize {
        self.truncation.size()
    }

    pub fn exactness(&self) -> Exactness {
        match self.entries {
            Entries::Exact(_) => Exactness::ExactRational,
            Entries::Float(_) => Exactness::Float,
        }
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn exact(&self, i: usize, j: usize) -> Option<&SurdEntry> {
        match &self.entries {
            Entries::Exact(v) => Some(&v[i * self.size() + j]),
            Entries::Float(_) => None,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let n = self.size();
        match &self.entries {
            Entries::Exact(v) => v[i * n + j].to_c64(),
            Entries::Float(v) => v[i * n + j],
        }
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        match &self.entries {
            Entries::Exact(v) => v.iter().map(SurdEntry::to_c64).collect(),
            Entries::Float(v) => v.clone(),
        }
    }

    /// Exact diagonal values; `None` for float matrices.
    pub fn exact_diagonal(&self) -> Option<Vec<ComplexRational>> {
        let n = self.size();
        (0..n).map(|i| self.exact(i, i).and_then(|e| e.as_rational().cloned())).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.size();
        match &self.entries {
            Entries::Exact(v) => (0..n).all(|i| (0..n).all(|j| i == j || v[i * n + j].is_zero())),
            Entries::Float(v) => (0..n).all(|i| (0..n).all(|j| i == j || v[i * n + j] == Complex64::new(0.0, 0.0))),
        }
    }

    /// `max |M - M^H|`; exactly 0 for a correct exact matrix.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.size();
        if let Entries::Exact(v) = &self.entries {
            let ok = (0..n).all(|i| (i..n).all(|j| v[i * n + j] == v[j * n + i].conj()));
            if ok {
                return 0.0;
            }
        }
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.to_dense().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn symbol_hash(&self) -> String {
        symbol_hash(&self.symbol)
    }

    /// Text dump: a header line, then one row-major entry per line.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "dim={} N={} inner_cap={} size={} symbol={} exactness={}\n",
            self.truncation.dim(),
            self.truncation.degree_cap(),
            self.inner_cap,
            self.size(),
            self.symbol_hash(),
            self.exactness()
        );
        match &self.entries {
            Entries::Exact(v) => {
                for e in v {
                    writeln!(out, "{e}").unwrap();
                }
            }
            Entries::Float(v) => {
                for z in v {
                    writeln!(out, "{:.16e} {:.16e}", z.re, z.im).unwrap();
                }
            }
        }
        out
    }
}

pub fn symbol_hash(sym: &PolySymbol) -> String {
    let digest = Sha256::digest(format!("{}|{}", sym.dim(), sym).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Parsed form of [`CompressionMatrix::dump`].
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixDump {
    pub dim: usize,
    pub degree_cap: u32,
    pub inner_cap: u32,
    pub symbol_hash: String,
    pub entries: Entries,
}

impl MatrixDump {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Parse { pos: line, msg: msg.to_string() };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad(0, "empty dump"))?;
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for f in header.split_whitespace() {
            let (k, v) = f.split_once('=').ok_or_else(|| bad(0, "malformed header"))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(0, &format!("missing header field {k}")));
        let num = |k: &str| -> Result<u64> { get(k)?.parse().map_err(|_| bad(0, &format!("bad {k}"))) };
        let dim = num("dim")? as usize;
        let degree_cap = num("N")? as u32;
        let inner_cap = num("inner_cap")? as u32;
        let size = num("size")? as usize;
        let symbol_hash = get("symbol")?.to_string();
        let exact = match get("exactness")? {
            "rational" => true,
            "float" => false,
            _ => return Err(bad(0, "unknown exactness")),
        };
        let rows: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();
        if rows.len() != size * size {
            return Err(bad(1, &format!("expected {} entries, found {}", size * size, rows.len())));
        }
        let entries = if exact {
            let v = rows
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let p: Vec<&str> = l.split_whitespace().collect();
                    if p.len() != 3 {
                        return Err(bad(i + 1, "expected `re im radicand`"));
                    }
                    Ok(SurdEntry {
                        coefficient: Complex::new(parse_ratio(p[0])?, parse_ratio(p[1])?),
                        radicand: p[2].parse().map_err(|_| bad(i + 1, "bad radicand"))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Entries::Exact(v)
        } else {
            let v = rows
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let p: Vec<f64> = l
                        .split_whitespace()
                        .map(|x| x.parse::<f64>().map_err(|_| bad(i + 1, "bad float")))
                        .collect::<Result<_>>()?;
                    if p.len() != 2 {
                        return Err(bad(i + 1, "expected `re im`"));
                    }
                    Ok(Complex64::new(p[0], p[1]))
                })
                .collect::<Result<Vec<_>>>()?;
            Entries::Float(v)
        };
        Ok(Self { dim, degree_cap, inner_cap, symbol_hash, entries })
    }
}

// ---------------------------------------------------------------------------
// entry and assembly

/// One entry of a compression, exact or float.
#[derive(Clone, Debug, PartialEq)]
pub enum GramEntry {
    Exact(SurdEntry),
    Float(Complex64),
}

impl GramEntry {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Self::Exact(e) => e.to_c64(),
            Self::Float(z) => *z,
        }
    }
}

/// `<H_psi e_alpha, H_psi e_beta>` in the orthonormal basis.
pub fn hankel_gram_entry(sym: &PolySymbol, alpha: &MultiIndex, beta: &MultiIndex, inner_cap: u32) -> Result<GramEntry> {
    alpha.check_dim(sym.dim())?;
    beta.check_dim(sym.dim())?;
    let cap = alpha.max_entry().max(beta.max_entry());
    let required = required_inner_cap(sym, cap);
    if inner_cap < required {
        return Err(Error::InnerCapTooSmall { given: inner_cap, required });
    }
    let (a, b) = (alpha.entries(), beta.entries());
    let (sa, sb) = (split_square(weight(a)), split_square(weight(b)));
    Ok(match exact_terms(sym) {
        Some(terms) => GramEntry::Exact(SurdEntry::scaled(gram_monomial(&terms, a, b, inner_cap), &sa, &sb)),
        None => {
            let terms = float_terms(sym);
            let g = gram_monomial(&terms, a, b, inner_cap);
            GramEntry::Float(g * ((weight(a) as f64) * (weight(b) as f64)).sqrt())
        }
    })
}

fn check_truncation(sym: &PolySymbol, trunc: &BasisTruncation) -> Result<()> {
    if sym.dim() != trunc.dim() {
        return Err(Error::DimensionMismatch { expected: trunc.dim(), found: sym.dim() });
    }
    Ok(())
}

/// Column indices that can be non-zero in row `alpha`: windings must match.
fn row_support(windings: &[Vec<i64>], alpha: &MultiIndex, trunc: &BasisTruncation) -> Vec<usize> {
    let mut cols: Vec<usize> = Vec::new();
    for ks in windings {
        for kt in windings {
            // beta + k_t = alpha + k_s
            let beta: Option<Vec<u32>> = alpha
                .entries()
                .iter()
                .zip(ks.iter().zip(kt))
                .map(|(&a, (&s, &t))| u32::try_from(a as i64 + s - t).ok())
                .collect();
            if let Some(j) = beta.and_then(|b| trunc.position(&MultiIndex::from(b))) {
                cols.push(j);
            }
        }
    }
    cols.sort_unstable();
    cols.dedup();
    cols
}

pub fn assemble(sym: &PolySymbol, trunc: &BasisTruncation) -> Result<CompressionMatrix> {
    assemble_with(sym, trunc, Arithmetic::Auto)
}

pub fn assemble_with(sym: &PolySymbol, trunc: &BasisTruncation, arithmetic: Arithmetic) -> Result<CompressionMatrix> {
    check_truncation(sym, trunc)?;
    let inner_cap = required_inner_cap(sym, trunc.degree_cap());
    let n = trunc.size();
    let windings: Vec<Vec<i64>> = {
        let mut w: Vec<Vec<i64>> = sym
            .terms()
            .map(|(k, _)| {
                k.holo.entries().iter().zip(k.antiholo.entries()).map(|(&a, &b)| a as i64 - b as i64).collect()
            })
            .collect();
        w.sort();
        w.dedup();
        w
    };
    let splits: Vec<Split> = trunc.indices().iter().map(|a| split_square(weight(a.entries()))).collect();
    let exact = match arithmetic {
        Arithmetic::Auto => exact_terms(sym),
        Arithmetic::Exact => Some(exact_terms(sym).ok_or(Error::NotExact)?),
        Arithmetic::Float => None,
    };
    let entries = match exact {
        Some(terms) => {
            let rows: Vec<Vec<(usize, SurdEntry)>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let row = &trunc.indices()[i];
                    row_support(&windings, row, trunc)
                        .into_iter()
                        .map(|j| {
                            let col = &trunc.indices()[j];
                            let g = gram_monomial(&terms, col.entries(), row.entries(), inner_cap);
                            (j, SurdEntry::scaled(g, &splits[j], &splits[i]))
                        })
                        .collect()
                })
                .collect();
            let mut v = vec![SurdEntry::zero(); n * n];
            for (i, row) in rows.into_iter().enumerate() {
                for (j, e) in row {
                    v[i * n + j] = e;
                }
            }
            Entries::Exact(v)
        }
        None => {
            let terms = float_terms(sym);
            let w: Vec<f64> = trunc.indices().iter().map(|a| weight(a.entries()) as f64).collect();
            let rows: Vec<Vec<(usize, Complex64)>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let row = &trunc.indices()[i];
                    row_support(&windings, row, trunc)
                        .into_iter()
                        .map(|j| {
                            let col = &trunc.indices()[j];
                            (j, gram_monomial(&terms, col.entries(), row.entries(), inner_cap) * (w[i] * w[j]).sqrt())
                        })
                        .collect()
                })
                .collect();
            let mut v = vec![Complex64::new(0.0, 0.0); n * n];
            for (i, row) in rows.into_iter().enumerate() {
                for (j, e) in row {
                    v[i * n + j] = e;
                }
            }
            Entries::Float(v)
        }
    };
    Ok(CompressionMatrix { truncation: trunc.clone(), symbol: sym.clone(), inner_cap, entries })
}

/// Independent assembly through `T_{|psi|^2} - T_{psi-bar} T_psi`, both compressed
/// with the same inner cap and built as dense matrices.
pub fn assemble_toeplitz_identity(sym: &PolySymbol, trunc: &BasisTruncation) -> Result<CompressionMatrix> {
    check_truncation(sym, trunc)?;
    let inner_cap = required_inner_cap(sym, trunc.degree_cap());
    let abs2 = sym.conj().mul(sym)?;
    match (exact_terms(sym), exact_terms(&abs2)) {
        (Some(t), Some(t2)) => {
            let mono = toeplitz_difference(&t, &t2, trunc, inner_cap);
            let splits: Vec<Split> = trunc.indices().iter().map(|a| split_square(weight(a.entries()))).collect();
            let n = trunc.size();
            let v = mono
                .into_iter()
                .enumerate()
                .map(|(idx, g)| SurdEntry::scaled(g, &splits[idx % n], &splits[idx / n]))
                .collect();
            Ok(CompressionMatrix {
                truncation: trunc.clone(),
                symbol: sym.clone(),
                inner_cap,
                entries: Entries::Exact(v),
            })
        }
        _ => {
            let mono = toeplitz_difference(&float_terms(sym), &float_terms(&abs2), trunc, inner_cap);
            let w: Vec<f64> = trunc.indices().iter().map(|a| weight(a.entries()) as f64).collect();
            let n = trunc.size();
            let v = mono.into_iter().enumerate().map(|(idx, g)| g * (w[idx / n] * w[idx % n]).sqrt()).collect();
            Ok(CompressionMatrix {
                truncation: trunc.clone(),
                symbol: sym.clone(),
                inner_cap,
                entries: Entries::Float(v),
            })
        }
    }
}

/// Row-major `(i, j) -> <T z^beta_j, z^alpha_i> / pi^n` difference in the monomial basis.
fn toeplitz_difference<S: Field>(
    terms: &[Term<S>],
    abs2: &[Term<S>],
    trunc: &BasisTruncation,
    inner_cap: u32,
) -> Vec<S> {
    let basis = trunc.indices();
    let inner = box_lattice(trunc.dim(), inner_cap);
    let zeros = vec![0u32; trunc.dim()];
    // <sum_u c_u z^{n_u} zbar^{m_u} z^b, z^a> / pi^n
    let toeplitz = |ts: &[Term<S>], a: &[u32], b: &[u32]| -> S {
        ts.iter().fold(S::zero(), |acc, t| match monomial_ip(&plus(b, &t.n), &t.m, a, &zeros) {
            Some(d) => acc + t.c.clone() * S::recip(&d),
            None => acc,
        })
    };
    // rectangular T_psi: inner box x truncated basis
    let t_psi: Vec<Vec<S>> =
        inner.par_iter().map(|g| basis.iter().map(|b| toeplitz(terms, g.entries(), b.entries())).collect()).collect();
    let w: Vec<S> = inner.iter().map(|g| S::from_u64(weight(g.entries()))).collect();
    let n = basis.len();
    (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let direct = toeplitz(abs2, basis[i].entries(), basis[j].entries());
            let mut product = S::zero();
            for (g, row) in t_psi.iter().enumerate() {
                if row[j].is_zero() || row[i].is_zero() {
                    continue;
                }
                product = product + row[j].clone() * row[i].conj() * w[g].clone();
            }
            direct - product
        })
        .collect()
}
