//! Multi-indices, signed windings and coordinate subsets.
//!
//! Coordinates are 0-based internally. Anything printed for humans
//! (subset members, parser tokens `z1`, `zb2`) is 1-based.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by the enumerators (subset sweeps are `2^dim`).
pub const MAX_DIM: usize = 8;

/// Exponent vector with non-negative entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(entries))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim.max(1)])
    }

    pub fn unit(dim: usize, coord: usize) -> Self {
        let mut v = vec![0; dim];
        v[coord] = 1;
        Self(v)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn get(&self, k: usize) -> u32 {
        self.0[k]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// Same entries with coordinate `coord` removed.
    pub fn drop_coord(&self, coord: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(coord);
        if v.is_empty() {
            v.push(0);
        }
        MultiIndex(v)
    }

    /// Insert `value` at position `coord`.
    pub fn insert_coord(&self, coord: usize, value: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v.insert(coord, value);
        MultiIndex(v)
    }

    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        MultiIndex(perm.iter().map(|&p| self.0[p]).collect())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.dim() });
        }
        Ok(())
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        assert!(!v.is_empty(), "multi-index needs at least one entry");
        Self(v)
    }
}

/// Graded lexicographic order: total degree first, then entries left to right.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Signed exponent vector `k` of a quasi-homogeneous symbol `f(|z|) e^{i k.theta}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Winding(Vec<i64>);

impl Winding {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(entries))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `alpha + k` if it stays in the non-negative orthant.
    pub fn shift(&self, alpha: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(alpha.entries())
            .map(|(&k, &a)| u32::try_from(a as i64 + k).ok())
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `2 alpha + self` as a signed vector.
    pub fn doubled_plus(&self, alpha: &MultiIndex) -> Winding {
        Winding(self.0.iter().zip(alpha.entries()).map(|(&k, &a)| 2 * a as i64 + k).collect())
    }
}

impl From<&MultiIndex> for Winding {
    fn from(a: &MultiIndex) -> Self {
        Winding(a.entries().iter().map(|&x| x as i64).collect())
    }
}

/// Non-empty set of coordinates, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<usize>,
}

impl Subset {
    /// Build from 0-based coordinates. Duplicates are rejected.
    pub fn new(mut members: Vec<usize>, dim: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("duplicate coordinate in subset".into()));
        }
        if let Some(&last) = members.last() {
            if last >= dim {
                return Err(Error::CoordinateOutOfRange { index: last + 1, dim });
            }
        }
        Ok(Self { members })
    }

    /// Build from 1-based coordinates, as written in the literature.
    pub fn from_one_based(members: &[usize], dim: usize) -> Result<Self> {
        if members.contains(&0) {
            return Err(Error::CoordinateOutOfRange { index: 0, dim });
        }
        Self::new(members.iter().map(|m| m - 1).collect(), dim)
    }

    pub fn full(dim: usize) -> Self {
        Self { members: (0..dim).collect() }
    }

    fn from_mask(mask: u32) -> Self {
        Self { members: (0..32).filter(|b| mask & (1 << b) != 0).collect() }
    }

    /// All non-empty subsets of `{0, .., dim-1}`, ordered by bitmask.
    pub fn all_nonempty(dim: usize) -> Vec<Subset> {
        (1u32..(1u32 << dim)).map(Self::from_mask).collect()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|m| m + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    pub fn is_full(&self, dim: usize) -> bool {
        self.members.len() == dim
    }

    pub fn relabeled(&self, perm_inverse: &[usize]) -> Subset {
        let mut members: Vec<usize> = self.members.iter().map(|&m| perm_inverse[m]).collect();
        members.sort_unstable();
        Subset { members }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m + 1)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Every multi-index of length `dim` with entries `<= cap`, in graded lexicographic order.
pub fn box_lattice(dim: usize, cap: u32) -> Vec<MultiIndex> {
    box_lattice_caps(&vec![cap; dim])
}

/// Box lattice with a separate cap per coordinate, in graded lexicographic order.
pub fn box_lattice_caps(caps: &[u32]) -> Vec<MultiIndex> {
    let dim = caps.len();
    let size: usize = caps.iter().map(|&c| c as usize + 1).product();
    let mut out = Vec::with_capacity(size);
    let mut cur = vec![0u32; dim];
    loop {
        out.push(MultiIndex(cur.clone()));
        let mut k = dim;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if cur[k] < caps[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
        }
    }
}

/// Multi-indices with entries `<= cap` on the coordinates in `subset` and zero elsewhere.
pub fn subset_lattice(dim: usize, subset: &Subset, cap: u32) -> Vec<MultiIndex> {
    let caps: Vec<u32> = (0..dim).map(|k| if subset.contains(k) { cap } else { 0 }).collect();
    box_lattice_caps(&caps)
}
