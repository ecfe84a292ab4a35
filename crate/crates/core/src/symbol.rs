//! Polynomial symbols in `z` and `zbar` with complex coefficients.
//!
//! Text form: `z1..z8` are the coordinates, `zb1..zb8` their conjugates, `i` the
//! imaginary unit. Coefficients are exact rationals (`3/4`, `0.25`, `1e-3`) combined with
//! `+ - * / ^` and parentheses, e.g. `zb1*(zb2 + 1)` or `(1/2 - i)*z1^2*zb1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{MultiIndex, MAX_DIM};
use crate::monomial::MonomialSymbol;
use crate::rational::{
    complex_conj, complex_is_zero, complex_to_f64, fmt_ratio, fmt_ratio_compact, parse_ratio, ComplexRational,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(ComplexRational),
    Float(Complex64),
}

impl Coefficient {
    pub fn one() -> Self {
        Self::Exact(Complex::new(BigRational::one(), BigRational::zero()))
    }

    pub fn zero() -> Self {
        Self::Exact(Complex::new(BigRational::zero(), BigRational::zero()))
    }

    pub fn real(r: BigRational) -> Self {
        Self::Exact(Complex::new(r, BigRational::zero()))
    }

    pub fn int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn imag_unit() -> Self {
        Self::Exact(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn unit_float(theta: f64) -> Self {
        Self::Float(Complex64::from_polar(1.0, theta))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Exact(c) => complex_is_zero(c),
            Self::Float(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Self::Exact(c) => complex_to_f64(c),
            Self::Float(c) => *c,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Self::Exact(c) => Self::Exact(complex_conj(c)),
            Self::Float(c) => Self::Float(c.conj()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a + b),
            _ => Self::Float(self.to_c64() + other.to_c64()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a * b),
            _ => Self::Float(self.to_c64() * other.to_c64()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Exact(a) => Self::Exact(-a.clone()),
            Self::Float(a) => Self::Float(-a),
        }
    }

    /// `self / other`; `None` on division by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Some(match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a / b),
            _ => Self::Float(self.to_c64() / other.to_c64()),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `|c|^2` exactly when possible.
    pub fn norm_sqr(&self) -> Self {
        match self {
            Self::Exact(c) => Self::real(&c.re * &c.re + &c.im * &c.im),
            Self::Float(c) => Self::Float(Complex64::new(c.norm_sqr(), 0.0)),
        }
    }

    fn fmt_exact(c: &ComplexRational) -> String {
        match (c.re.is_zero(), c.im.is_zero()) {
            (_, true) => fmt_ratio_compact(&c.re),
            (true, false) => format!("{}*i", fmt_ratio_compact(&c.im)),
            (false, false) => {
                let sign = if c.im < BigRational::zero() { "-" } else { "+" };
                let im = if c.im < BigRational::zero() { -c.im.clone() } else { c.im.clone() };
                format!("({}{}{}*i)", fmt_ratio_compact(&c.re), sign, fmt_ratio_compact(&im))
            }
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Self::Exact(c) => c.re.is_one() && c.im.is_zero(),
            Self::Float(c) => c.re == 1.0 && c.im == 0.0,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(c) => f.write_str(&Self::fmt_exact(c)),
            Self::Float(c) if c.im == 0.0 => write!(f, "{:?}", c.re),
            Self::Float(c) => write!(f, "({:?}+{:?}*i)", c.re, c.im),
        }
    }
}

/// `(holo, antiholo)` exponent pair of one monomial `z^holo zbar^antiholo`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub holo: MultiIndex,
    pub antiholo: MultiIndex,
}

/// Finite sum of `c z^n zbar^m`, with duplicate exponent pairs merged and zero
/// coefficients dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySymbol {
    dim: usize,
    terms: BTreeMap<TermKey, Coefficient>,
}

impl PolySymbol {
    pub fn zero(dim: usize) -> Self {
        Self { dim: dim.max(1), terms: BTreeMap::new() }
    }

    pub fn constant(c: Coefficient, dim: usize) -> Self {
        Self::monomial(c, MultiIndex::zeros(dim), MultiIndex::zeros(dim))
    }

    pub fn monomial(c: Coefficient, holo: MultiIndex, antiholo: MultiIndex) -> Self {
        let dim = holo.dim();
        let mut s = Self::zero(dim);
        s.push(TermKey { holo, antiholo }, c);
        s
    }

    pub fn from_monomial(sym: &MonomialSymbol) -> Self {
        Self::monomial(Coefficient::one(), sym.holo.clone(), sym.antiholo.clone())
    }

    /// `z_coord` (0-based).
    pub fn coordinate(dim: usize, coord: usize) -> Self {
        Self::monomial(Coefficient::one(), MultiIndex::unit(dim, coord), MultiIndex::zeros(dim))
    }

    /// `conj(z_coord)` (0-based).
    pub fn conj_coordinate(dim: usize, coord: usize) -> Self {
        Self::monomial(Coefficient::one(), MultiIndex::zeros(dim), MultiIndex::unit(dim, coord))
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Coefficient, MultiIndex, MultiIndex)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut s = Self::zero(dim);
        for (c, holo, antiholo) in terms {
            holo.check_dim(dim)?;
            antiholo.check_dim(dim)?;
            s.push(TermKey { holo, antiholo }, c);
        }
        Ok(s)
    }

    fn push(&mut self, key: TermKey, c: Coefficient) {
        let merged = match self.terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Coefficient)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Coefficient::is_exact)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|k| k.antiholo.is_zero())
    }

    /// The single term as a monomial symbol and its coefficient.
    pub fn as_monomial(&self) -> Option<(Coefficient, MonomialSymbol)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some((c.clone(), MonomialSymbol { holo: k.holo.clone(), antiholo: k.antiholo.clone() }))
    }

    /// Largest `n_k + m_k` over the terms.
    pub fn coord_degree(&self, k: usize) -> u32 {
        self.terms.keys().map(|t| t.holo.get(k) + t.antiholo.get(k)).max().unwrap_or(0)
    }

    pub fn max_coord_degree(&self) -> u32 {
        (0..self.dim).map(|k| self.coord_degree(k)).max().unwrap_or(0)
    }

    /// Embed into a larger ambient dimension by appending unused coordinates.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        if dim < self.dim {
            return Err(Error::Invalid(format!("cannot shrink dimension {} to {dim}", self.dim)));
        }
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
        }
        let pad = |m: &MultiIndex| {
            let mut v = m.entries().to_vec();
            v.resize(dim, 0);
            MultiIndex::from(v)
        };
        let terms = self.terms.iter().map(|(k, c)| (c.clone(), pad(&k.holo), pad(&k.antiholo)));
        Self::from_terms(dim, terms)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut s = self.clone();
        for (k, c) in &other.terms {
            s.push(k.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Coefficient::int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut s = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let key = TermKey { holo: a.holo.add(&b.holo), antiholo: a.antiholo.add(&b.antiholo) };
                s.push(key, ca.mul(cb));
            }
        }
        Ok(s)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Coefficient::one(), self.dim);
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut s = Self::zero(self.dim);
        for (k, v) in &self.terms {
            s.push(k.clone(), v.mul(c));
        }
        s
    }

    /// Pointwise complex conjugate: swaps `z` and `zbar` exponents.
    pub fn conj(&self) -> Self {
        let mut s = Self::zero(self.dim);
        for (k, c) in &self.terms {
            s.push(TermKey { holo: k.antiholo.clone(), antiholo: k.holo.clone() }, c.conj());
        }
        s
    }

    /// All coefficients converted to floating point.
    pub fn to_float(&self) -> Self {
        let mut s = Self::zero(self.dim);
        for (k, c) in &self.terms {
            s.push(k.clone(), Coefficient::Float(c.to_c64()));
        }
        s
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut v = c.to_c64();
                for (j, zj) in z.iter().enumerate() {
                    v *= zj.powu(k.holo.get(j)) * zj.conj().powu(k.antiholo.get(j));
                }
                v
            })
            .sum()
    }

    /// `sum |c|`, an upper bound for the sup norm on the closed polydisc.
    pub fn coefficient_l1(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).sum()
    }

    /// Substitute `z_coord = q`, `zbar_coord = conj(q)` (0-based `coord`).
    pub fn substitute(&self, coord: usize, q: &Coefficient) -> Result<Self> {
        if self.dim < 2 {
            return Err(Error::SliceOfUnivariate);
        }
        if coord >= self.dim {
            return Err(Error::CoordinateOutOfRange { index: coord + 1, dim: self.dim });
        }
        let qbar = q.conj();
        let mut s = Self::zero(self.dim - 1);
        for (k, c) in &self.terms {
            let factor = q.pow(k.holo.get(coord)).mul(&qbar.pow(k.antiholo.get(coord)));
            let key = TermKey { holo: k.holo.drop_coord(coord), antiholo: k.antiholo.drop_coord(coord) };
            s.push(key, c.mul(&factor));
        }
        Ok(s)
    }

    /// `psi(.., e^{i theta0} z_coord, ..)`: each term picks up `e^{i theta0 (n - m)}`.
    pub fn rotate_coordinate(&self, coord: usize, theta0: f64) -> Self {
        let mut s = Self::zero(self.dim);
        for (k, c) in &self.terms {
            let w = k.holo.get(coord) as f64 - k.antiholo.get(coord) as f64;
            s.push(k.clone(), c.mul(&Coefficient::unit_float(theta0 * w)));
        }
        s
    }

    /// Split `psi(z', z_coord) = phi(z') chi(z_coord)` when the coefficient array is
    /// rank one. Exact symbols only; returns `None` otherwise.
    pub fn factor_coordinate(&self, coord: usize) -> Option<(PolySymbol, PolySymbol)> {
        if self.dim < 2 || coord >= self.dim || !self.is_exact() || self.is_zero() {
            return None;
        }
        type Key = (MultiIndex, MultiIndex);
        let mut grid: BTreeMap<Key, BTreeMap<(u32, u32), Coefficient>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let rest = (k.holo.drop_coord(coord), k.antiholo.drop_coord(coord));
            grid.entry(rest).or_default().insert((k.holo.get(coord), k.antiholo.get(coord)), c.clone());
        }
        let cols: std::collections::BTreeSet<(u32, u32)> = grid.values().flat_map(|row| row.keys().copied()).collect();
        let (r0, row0) = grid.iter().next()?;
        let (&c0, pivot) = row0.iter().next()?;
        let at = |row: &BTreeMap<(u32, u32), Coefficient>, c: &(u32, u32)| {
            row.get(c).cloned().unwrap_or_else(Coefficient::zero)
        };
        for row in grid.values() {
            let phi_r = at(row, &c0);
            for c in &cols {
                // C[r, c] * C[r0, c0] == C[r, c0] * C[r0, c]
                let lhs = at(row, c).mul(pivot);
                let rhs = phi_r.mul(&at(row0, c));
                if lhs != rhs {
                    return None;
                }
            }
        }
        let phi = Self::from_terms(self.dim - 1, grid.iter().map(|((h, a), row)| (at(row, &c0), h.clone(), a.clone())))
            .ok()?;
        let chi = Self::from_terms(
            1,
            cols.iter().map(|c| {
                (
                    at(row0, c).div(pivot).expect("pivot is non-zero"),
                    MultiIndex::from(vec![c.0]),
                    MultiIndex::from(vec![c.1]),
                )
            }),
        )
        .ok()?;
        let _ = r0;
        Some((phi, chi))
    }

    /// Canonical text form; `parse(to_string())` reproduces exact symbols.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PolySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for j in 0..self.dim {
                for (e, name) in [(k.holo.get(j), "z"), (k.antiholo.get(j), "zb")] {
                    match e {
                        0 => {}
                        1 => factors.push(format!("{name}{}", j + 1)),
                        _ => factors.push(format!("{name}{}^{e}", j + 1)),
                    }
                }
            }
            if factors.is_empty() || !c.is_one() {
                factors.insert(0, c.to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// parser

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Z(usize),
    Zb(usize),
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    while i < b.len() {
        let c = b[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'i' => out.push((start, Tok::I)),
            b'z' => {
                i += 1;
                let conj = i < b.len() && b[i] == b'b';
                if conj {
                    i += 1;
                }
                let ds = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(start, "expected coordinate number after z/zb"));
                }
                let k: usize = src[ds..i].parse().map_err(|_| err(ds, "bad coordinate"))?;
                if k == 0 || k > MAX_DIM {
                    return Err(err(ds, &format!("coordinate must be in 1..={MAX_DIM}")));
                }
                out.push((start, if conj { Tok::Zb(k) } else { Tok::Z(k) }));
                continue;
            }
            b'0'..=b'9' | b'.' => {
                while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                    i += 1;
                }
                let mantissa = &src[start..i];
                let mut value = parse_ratio(mantissa).map_err(|_| err(start, "bad number"))?;
                if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                    let mut j = i + 1;
                    if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                        j += 1;
                    }
                    let ds = j;
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    if ds == j {
                        return Err(err(i, "bad exponent"));
                    }
                    let e: i32 = src[i + 1..j].parse().map_err(|_| err(i, "bad exponent"))?;
                    let p = BigRational::from_integer(BigInt::from(10u32).pow(e.unsigned_abs()));
                    value = if e >= 0 { value * p } else { value / p };
                    i = j;
                }
                out.push((start, Tok::Num(value)));
                continue;
            }
            _ => return Err(err(start, &format!("unexpected character {:?}", c as char))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.here(), msg: msg.to_string() }
    }

    fn expr(&mut self) -> Result<PolySymbol> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolySymbol> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = acc.mul(&f)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let f = self.unary()?;
                    let c = constant_value(&f)
                        .ok_or_else(|| Error::Parse { pos: at, msg: "can only divide by a constant".into() })?;
                    let inv = Coefficient::one()
                        .div(&c)
                        .ok_or_else(|| Error::Parse { pos: at, msg: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolySymbol> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.scale(&Coefficient::int(-1)))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolySymbol> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Num(n))) if n.is_integer() && n >= BigRational::zero() => {
                    self.pos += 1;
                    let e: u32 = n.numer().try_into().map_err(|_| self.err("exponent too large"))?;
                    if e > 64 {
                        return Err(self.err("exponent too large"));
                    }
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolySymbol> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Num(n) => PolySymbol::constant(Coefficient::real(n), MAX_DIM),
            Tok::I => PolySymbol::constant(Coefficient::imag_unit(), MAX_DIM),
            Tok::Z(k) => PolySymbol::coordinate(MAX_DIM, k - 1),
            Tok::Zb(k) => PolySymbol::conj_coordinate(MAX_DIM, k - 1),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                e
            }
            _ => {
                self.pos -= 1;
                return Err(self.err("unexpected token"));
            }
        })
    }
}

fn constant_value(s: &PolySymbol) -> Option<Coefficient> {
    match s.terms.len() {
        0 => Some(Coefficient::zero()),
        1 => {
            let (k, c) = s.terms.iter().next()?;
            (k.holo.is_zero() && k.antiholo.is_zero()).then(|| c.clone())
        }
        _ => None,
    }
}

/// Coordinates actually used by a symbol built in the maximal ambient space.
fn used_dim(s: &PolySymbol) -> usize {
    s.terms
        .keys()
        .flat_map(|k| (0..s.dim).filter(move |&j| k.holo.get(j) > 0 || k.antiholo.get(j) > 0))
        .max()
        .map_or(1, |j| j + 1)
}

fn shrink(s: &PolySymbol, dim: usize) -> PolySymbol {
    let cut = |m: &MultiIndex| MultiIndex::from(m.entries()[..dim].to_vec());
    let mut out = PolySymbol::zero(dim);
    for (k, c) in &s.terms {
        out.push(TermKey { holo: cut(&k.holo), antiholo: cut(&k.antiholo) }, c.clone());
    }
    out
}

impl FromStr for PolySymbol {
    type Err = Error;

    /// Dimension is the largest coordinate index used (at least 1).
    fn from_str(src: &str) -> Result<Self> {
        let toks = lex(src)?;
        if toks.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
        }
        let mut p = Parser { toks, pos: 0, end: src.len() };
        let full = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(shrink(&full, used_dim(&full)))
    }
}

// ---------------------------------------------------------------------------
// structured (JSON) form

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoefficientSpec {
    /// Real rational such as `"3/4"`.
    Text(String),
    /// Exact `[re, im]` as rational strings.
    ExactPair([String; 2]),
    /// Floating `[re, im]`.
    FloatPair([f64; 2]),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermSpec {
    pub coeff: CoefficientSpec,
    pub holo: Vec<u32>,
    pub antiholo: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SymbolTerms {
    pub dim: usize,
    pub terms: Vec<TermSpec>,
}

impl TryFrom<&SymbolTerms> for PolySymbol {
    type Error = Error;

    fn try_from(spec: &SymbolTerms) -> Result<Self> {
        let terms = spec
            .terms
            .iter()
            .map(|t| {
                let c = match &t.coeff {
                    CoefficientSpec::Text(s) => Coefficient::real(parse_ratio(s)?),
                    CoefficientSpec::ExactPair([re, im]) => {
                        Coefficient::Exact(Complex::new(parse_ratio(re)?, parse_ratio(im)?))
                    }
                    CoefficientSpec::FloatPair([re, im]) => Coefficient::Float(Complex64::new(*re, *im)),
                };
                Ok((c, MultiIndex::new(t.holo.clone())?, MultiIndex::new(t.antiholo.clone())?))
            })
            .collect::<Result<Vec<_>>>()?;
        PolySymbol::from_terms(spec.dim, terms)
    }
}

impl From<&PolySymbol> for SymbolTerms {
    fn from(s: &PolySymbol) -> Self {
        let terms = s
            .terms
            .iter()
            .map(|(k, c)| TermSpec {
                coeff: match c {
                    Coefficient::Exact(c) => CoefficientSpec::ExactPair([fmt_ratio(&c.re), fmt_ratio(&c.im)]),
                    Coefficient::Float(c) => CoefficientSpec::FloatPair([c.re, c.im]),
                },
                holo: k.holo.entries().to_vec(),
                antiholo: k.antiholo.entries().to_vec(),
            })
            .collect();
        SymbolTerms { dim: s.dim, terms }
    }
}

impl Serialize for PolySymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymbolTerms::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolySymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = SymbolTerms::deserialize(d)?;
        PolySymbol::try_from(&spec).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(s: &str) -> PolySymbol {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_dimension() {
        let s = p("zb1*(zb2+1)");
        assert_eq!(s.dim(), 2);
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.to_string(), "zb1 + zb1*zb2");
        assert_eq!(p("z1^2").dim(), 1);
        assert_eq!(p("3").dim(), 1);
        assert_eq!(p("zb3").dim(), 3);
    }

    #[test]
    fn duplicate_terms_merge() {
        let s = p("zb1 + zb1");
        assert_eq!(s, p("2*zb1"));
        assert!(p("zb1 - zb1").is_zero());
        assert_eq!(p("zb1 - zb1").to_string(), "0");
    }

    #[test]
    fn complex_and_rational_coefficients() {
        let s = p("(1/2 - i)*z1^2*zb1 + 0.25");
        let t = s.to_string();
        assert_eq!(t, "1/4 + (1/2-1*i)*z1^2*zb1");
        assert_eq!(p(&t), s);
        assert_eq!(p("zb1/4"), p("1/4*zb1"));
        assert_eq!(p("1e-2*z1"), p("1/100*z1"));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "z0", "z9", "zb1^", "zb1*(z2", "x1", "zb1/z1", "1/0", "z1 z2"] {
            assert!(bad.parse::<PolySymbol>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn slice_at_boundary_points() {
        let s = p("zb1*(zb2+1)");
        let at1 = s.substitute(1, &Coefficient::one()).unwrap();
        assert_eq!(at1, p("2*zb1"));
        let at_m1 = s.substitute(1, &Coefficient::int(-1)).unwrap();
        assert!(at_m1.is_zero());
        assert!(p("zb1").substitute(0, &Coefficient::one()).is_err());
    }

    #[test]
    fn factor_rank_one() {
        let s = p("zb1*(zb2+1)");
        let (phi, chi) = s.factor_coordinate(1).unwrap();
        assert_eq!(phi, p("zb1"));
        assert_eq!(chi, p("zb1 + 1"));
        assert!(p("zb1*zb2 + z1").factor_coordinate(1).is_none());
        let (phi, chi) = p("3*zb1^2*zb2^3").factor_coordinate(0).unwrap();
        assert_eq!(phi.mul(&PolySymbol::constant(Coefficient::one(), 1)).unwrap(), p("3*zb1^3"));
        assert_eq!(chi, p("zb1^2"));
    }

    #[test]
    fn conj_and_mul() {
        let s = p("zb1 + i*z1");
        let sq = s.conj().mul(&s).unwrap();
        // |zbar + i z|^2 = |z|^2 + i z^2 - i zbar^2 + |z|^2
        assert_eq!(sq, p("2*z1*zb1 + i*z1^2 - i*zb1^2"));
        let v = sq.eval(&[Complex64::new(0.3, -0.2)]);
        let w = s.eval(&[Complex64::new(0.3, -0.2)]).norm_sqr();
        assert!((v.re - w).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn json_terms_round_trip() {
        let s = p("(1/3+2*i)*zb1*z2 - 5");
        let j = serde_json::to_string(&s).unwrap();
        let back: PolySymbol = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let spec = r#"{"dim":1,"terms":[{"coeff":"1/2","holo":[0],"antiholo":[1]}]}"#;
        let t: PolySymbol = serde_json::from_str(spec).unwrap();
        assert_eq!(t, p("zb1/2"));
        assert_eq!(t.as_monomial().unwrap().0, Coefficient::real(rat(1, 2)));
    }
}
