//! Closed-form spectra for monomial symbols `z^n zbar^m` on the polydisc.
//!
//! Every monomial `z^alpha` is an eigenvector of `H*_psi H_psi` with eigenvalue
//! `lambda(n, m, alpha, B_n)`. Values attached to proper subsets `B` are the
//! limits of those eigenvalues as the coordinates outside `B` run off to infinity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{subset_lattice, MultiIndex, Subset, MAX_DIM};
use crate::rational::ExactScalar;

/// `psi(z) = z^holo * conj(z)^antiholo`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialSymbol {
    pub holo: MultiIndex,
    pub antiholo: MultiIndex,
}

impl MonomialSymbol {
    pub fn new(holo: MultiIndex, antiholo: MultiIndex) -> Result<Self> {
        antiholo.check_dim(holo.dim())?;
        Ok(Self { holo, antiholo })
    }

    /// Convenience constructor from plain vectors.
    pub fn from_vecs(holo: Vec<u32>, antiholo: Vec<u32>) -> Result<Self> {
        Self::new(MultiIndex::new(holo)?, MultiIndex::new(antiholo)?)
    }

    pub fn dim(&self) -> usize {
        self.holo.dim()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.antiholo.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MultiplicityClass {
    AllFinite,
    AllInfinite,
    ZeroOperator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Multiplicity {
    Finite,
    Infinite,
}

/// One `(alpha, B)` pair producing a value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Provenance {
    pub alpha: MultiIndex,
    pub subset: Subset,
    /// `B = B_n`: the value is a genuine eigenvalue with eigenvector `z^alpha`.
    pub full: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenRecord {
    pub value: ExactScalar,
    /// Every `(alpha, B)` producing this value, sorted. Empty only for the bare `0`.
    pub provenance: Vec<Provenance>,
    pub multiplicity: Multiplicity,
    pub is_limit_point: bool,
}

impl EigenRecord {
    pub fn is_eigenvalue(&self) -> bool {
        self.provenance.iter().any(|p| p.full)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectrumKind {
    Spectrum,
    Essential,
}

/// Finite slice of a countable spectrum, sorted ascending by exact value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumSet {
    pub kind: SpectrumKind,
    pub records: Vec<EigenRecord>,
    pub alpha_cap: u32,
    pub contains_zero: bool,
    /// The true set is infinite unless the operator vanishes.
    pub truncated: bool,
    /// Set when the symbol is holomorphic and the operator is zero.
    pub zero_operator: bool,
}

impl SpectrumSet {
    pub fn values(&self) -> Vec<ExactScalar> {
        self.records.iter().map(|r| r.value.clone()).collect()
    }

    pub fn contains(&self, v: &ExactScalar) -> bool {
        self.records.binary_search_by(|r| r.value.cmp(v)).is_ok()
    }

    pub fn get(&self, v: &ExactScalar) -> Option<&EigenRecord> {
        self.records.binary_search_by(|r| r.value.cmp(v)).ok().map(|i| &self.records[i])
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

fn check_inputs(n: &MultiIndex, m: &MultiIndex, alpha: &MultiIndex) -> Result<()> {
    m.check_dim(n.dim())?;
    alpha.check_dim(n.dim())
}

/// The closed-form value `lambda_{n,m,alpha,B}`.
///
/// If `alpha_k < m_k - n_k` for some `k` in `B` the projection part vanishes and the
/// value is `prod (alpha_k+1)/(alpha_k+n_k+m_k+1)`; otherwise the product
/// `prod (alpha_k+1)(alpha_k+n_k-m_k+1)/(alpha_k+n_k+1)^2` is subtracted.
pub fn lambda_value(n: &MultiIndex, m: &MultiIndex, alpha: &MultiIndex, subset: &Subset) -> Result<ExactScalar> {
    check_inputs(n, m, alpha)?;
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&k) = subset.members().last() {
        if k >= n.dim() {
            return Err(Error::CoordinateOutOfRange { index: k + 1, dim: n.dim() });
        }
    }
    Ok(ExactScalar::new(lambda_unchecked(n, m, alpha, subset.members())))
}

pub(crate) fn lambda_unchecked(n: &MultiIndex, m: &MultiIndex, alpha: &MultiIndex, coords: &[usize]) -> BigRational {
    let mut norm_num = BigInt::one();
    let mut norm_den = BigInt::one();
    let mut kernel_branch = false;
    for &k in coords {
        let (a, nk, mk) = (alpha.get(k) as i64, n.get(k) as i64, m.get(k) as i64);
        norm_num *= a + 1;
        norm_den *= a + nk + mk + 1;
        if a + nk < mk {
            kernel_branch = true;
        }
    }
    let norm = BigRational::new(norm_num, norm_den);
    if kernel_branch {
        return norm;
    }
    let mut proj_num = BigInt::one();
    let mut proj_den = BigInt::one();
    for &k in coords {
        let (a, nk, mk) = (alpha.get(k) as i64, n.get(k) as i64, m.get(k) as i64);
        proj_num *= (a + 1) * (a + nk - mk + 1);
        proj_den *= (a + nk + 1) * (a + nk + 1);
    }
    norm - BigRational::new(proj_num, proj_den)
}

pub fn multiplicity_class(sym: &MonomialSymbol) -> MultiplicityClass {
    if sym.antiholo.is_zero() {
        MultiplicityClass::ZeroOperator
    } else if (0..sym.dim()).any(|k| sym.holo.get(k) + sym.antiholo.get(k) == 0) {
        MultiplicityClass::AllInfinite
    } else {
        MultiplicityClass::AllFinite
    }
}

fn record_multiplicity(class: MultiplicityClass) -> Multiplicity {
    match class {
        MultiplicityClass::AllFinite => Multiplicity::Finite,
        MultiplicityClass::AllInfinite | MultiplicityClass::ZeroOperator => Multiplicity::Infinite,
    }
}

fn check_enum_dim(dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
    }
    Ok(())
}

fn collect_records(sym: &MonomialSymbol, alpha_cap: u32, subsets: &[Subset], kind: SpectrumKind) -> SpectrumSet {
    let dim = sym.dim();
    let class = multiplicity_class(sym);
    let multiplicity = record_multiplicity(class);

    let pairs: Vec<(BigRational, Provenance)> = subsets
        .par_iter()
        .flat_map_iter(|b| {
            let full = b.is_full(dim);
            subset_lattice(dim, b, alpha_cap).into_iter().map(move |alpha| {
                let v = lambda_unchecked(&sym.holo, &sym.antiholo, &alpha, b.members());
                (v, Provenance { alpha, subset: b.clone(), full })
            })
        })
        .collect();

    let mut merged: BTreeMap<BigRational, Vec<Provenance>> = BTreeMap::new();
    merged.insert(BigRational::zero(), Vec::new());
    for (v, p) in pairs {
        merged.entry(v).or_default().push(p);
    }

    let records = merged
        .into_iter()
        .map(|(value, mut provenance)| {
            provenance.sort();
            let is_limit_point = value.is_zero() || provenance.iter().any(|p| !p.full);
            EigenRecord { value: ExactScalar::new(value), provenance, multiplicity, is_limit_point }
        })
        .collect();

    SpectrumSet {
        kind,
        records,
        alpha_cap,
        contains_zero: true,
        truncated: class != MultiplicityClass::ZeroOperator,
        zero_operator: class == MultiplicityClass::ZeroOperator,
    }
}

/// `{0} ∪ {lambda(n, m, alpha, B)}` over `alpha` with entries `<= alpha_cap` and every
/// non-empty `B`, merged by exact value.
///
/// For a proper subset `B` only the coordinates in `B` are swept; entries of `alpha`
/// outside `B` do not affect the value and are reported as zero.
pub fn enumerate_spectrum(sym: &MonomialSymbol, alpha_cap: u32) -> Result<SpectrumSet> {
    check_enum_dim(sym.dim())?;
    let subsets = Subset::all_nonempty(sym.dim());
    Ok(collect_records(sym, alpha_cap, &subsets, SpectrumKind::Spectrum))
}

/// Essential spectrum of `H*_psi H_psi` for a monomial symbol.
///
/// If some coordinate has `n_k + m_k = 0` every eigenvalue has infinite multiplicity and
/// the essential spectrum is the whole spectrum. Otherwise only `0` and the values for
/// proper subsets survive. A holomorphic symbol yields `{0}` with `zero_operator` set.
pub fn enumerate_essential_spectrum(sym: &MonomialSymbol, alpha_cap: u32) -> Result<SpectrumSet> {
    check_enum_dim(sym.dim())?;
    let dim = sym.dim();
    let subsets: Vec<Subset> = match multiplicity_class(sym) {
        MultiplicityClass::ZeroOperator => Vec::new(),
        MultiplicityClass::AllInfinite => Subset::all_nonempty(dim),
        MultiplicityClass::AllFinite => Subset::all_nonempty(dim).into_iter().filter(|b| !b.is_full(dim)).collect(),
    };
    let mut set = collect_records(sym, alpha_cap, &subsets, SpectrumKind::Essential);
    if set.zero_operator {
        set.truncated = false;
    }
    Ok(set)
}
