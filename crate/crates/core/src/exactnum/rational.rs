//! Arbitrary-precision rationals and their string form.
//!
//! `num_rational::BigRational` already keeps values in lowest terms with a
//! positive denominator, so it is used directly. This module adds the
//! constructors and the `"p/q"` wire format used across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn rat<N: Into<BigInt>, D: Into<BigInt>>(n: N, d: D) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// `"p/q"` when the denominator is not 1, otherwise `"p"`.
pub fn to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or `"p"`. Non-reduced input is accepted and normalized.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if !d.is_positive() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large values: scale through the bit lengths.
    let n = x.numer().bits() as i64;
    let d = x.denom().bits() as i64;
    let shift = n - d - 60;
    let scaled =
        if shift > 0 { Rational::new(x.numer().clone(), x.denom().clone() << (shift as usize)) } else { x.clone() };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift.max(0) as i32)
}

/// Decimal rendering with `sig` significant digits.
pub fn to_decimal(x: &Rational, sig: usize) -> String {
    format_sig(to_f64(x), sig)
}

pub(crate) fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{:.*e}", sig.saturating_sub(1), v)
    }
}

pub fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapter: a rational as a `"p/q"` string. Plain JSON integers are
/// accepted on input.
pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(x))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Str(String),
        Int(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Str(s) => parse(&s).map_err(de::Error::custom),
            Repr::Int(n) => Ok(int(n)),
        }
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::serde_str")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let w: Vec<Wrap> = v.iter().cloned().map(Wrap).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Ok(Vec::<Wrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

/// Serde adapter for `Vec<Vec<Rational>>`.
pub mod serde_matrix {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "super::serde_vec")] Vec<Rational>);

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let w: Vec<Row> = m.iter().cloned().map(Row).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

/// Serde adapter for big integers: a JSON number when it fits in `i64`,
/// otherwise a decimal string.
pub mod serde_bigint {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(BigInt::from(n)),
            Repr::Str(s) => s.trim().parse().map_err(de::Error::custom),
        }
    }
}
