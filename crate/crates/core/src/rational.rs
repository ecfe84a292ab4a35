//! Exact scalars: reduced big rationals and complex rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type ComplexRational = Complex<BigRational>;

/// Reduced fraction with positive denominator. Printed as `num/den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(value: BigRational) -> Self {
        // BigRational keeps itself reduced with a positive denominator.
        Self(value)
    }

    pub fn from_ints(num: i64, den: i64) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ratio(s).map(Self)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parse `p`, `p/q` or a finite decimal like `-0.125` into an exact rational.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            t => t.parse().map_err(|_| bad("bad decimal"))?,
        };
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().unwrap() };
        let mag = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad("bad integer"))?;
    Ok(BigRational::from_integer(n))
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    // Direct conversion is exact enough and avoids overflow for huge numerators.
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn complex_to_f64(c: &ComplexRational) -> Complex64 {
    Complex64::new(ratio_to_f64(&c.re), ratio_to_f64(&c.im))
}

pub fn complex_real(r: BigRational) -> ComplexRational {
    Complex::new(r, BigRational::zero())
}

pub fn complex_conj(c: &ComplexRational) -> ComplexRational {
    Complex::new(c.re.clone(), -c.im.clone())
}

pub fn complex_norm_sqr(c: &ComplexRational) -> BigRational {
    &c.re * &c.re + &c.im * &c.im
}

pub fn complex_is_zero(c: &ComplexRational) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

/// `a/b` with sign, `num/den` always spelled out.
pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form used by the symbol printer: integers without `/1`.
pub fn fmt_ratio_compact(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        fmt_ratio(r)
    }
}

pub fn is_negative(r: &BigRational) -> bool {
    r.is_negative()
}
