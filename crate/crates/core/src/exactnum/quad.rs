//! Exact arithmetic in the real quadratic field Q(sqrt(q)).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, int, Rational};
use crate::error::{Error, Result};

/// The real number `a + b*sqrt(rad)`.
///
/// Perfect-square radicands are folded into `a` on construction, leaving
/// `rad = 1, b = 0`. A value with `b = 0` is a plain rational and combines
/// with any radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadRepr", into = "QuadRepr")]
pub struct QuadValue {
    rad: u64,
    a: Rational,
    b: Rational,
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    #[serde(with = "rational::serde_str")]
    a: Rational,
    #[serde(with = "rational::serde_str")]
    b: Rational,
    rad: u64,
}

impl TryFrom<QuadRepr> for QuadValue {
    type Error = Error;
    fn try_from(r: QuadRepr) -> Result<Self> {
        QuadValue::new(r.rad, r.a, r.b)
    }
}

impl From<QuadValue> for QuadRepr {
    fn from(v: QuadValue) -> Self {
        QuadRepr { a: v.a, b: v.b, rad: v.rad }
    }
}

fn square_root_exact(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

impl QuadValue {
    pub fn new(rad: u64, a: Rational, b: Rational) -> Result<Self> {
        if rad == 0 {
            return Ok(Self::rational(a));
        }
        if let Some(r) = square_root_exact(rad) {
            return Ok(Self::rational(a + b * int(r)));
        }
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        Ok(QuadValue { rad, a, b })
    }

    pub fn rational(a: Rational) -> Self {
        QuadValue { rad: 1, a, b: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `sqrt(q)`, which is rational when `q` is a square.
    pub fn sqrt_of(q: u64) -> Self {
        Self::new(q, Rational::zero(), Rational::one()).expect("nonzero radicand")
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The radicand, or 1 for a rational value.
    pub fn rad(&self) -> u64 {
        self.rad
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_rad(&self, other: &Self) -> Result<u64> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.rad),
            (_, true) => Ok(self.rad),
            _ if self.rad == other.rad => Ok(self.rad),
            _ => Err(Error::MixedRadicand(self.rad, other.rad)),
        }
    }

    fn build(rad: u64, a: Rational, b: Rational) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            QuadValue { rad, a, b }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let rad = self.common_rad(other)?;
        Ok(Self::build(rad, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let rad = self.common_rad(other)?;
        Ok(Self::build(rad, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let rad = self.common_rad(other)?;
        let d = int(rad);
        let a = &self.a * &other.a + &self.b * &other.b * d;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::build(rad, a, b))
    }

    /// `a - b*sqrt(q)`.
    pub fn conjugate(&self) -> Self {
        Self::build(self.rad, self.a.clone(), -&self.b)
    }

    /// `a^2 - q*b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(self.rad)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Self::build(self.rad, &c.a / &n, &c.b / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.common_rad(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::build(self.rad, &self.a * k, &self.b * k)
    }

    /// Exact sign of `a + b*sqrt(q)`.
    pub fn sign(&self) -> i32 {
        let sa = rational::sign(&self.a);
        let sb = rational::sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of a^2 and q*b^2 wins.
        let a2 = &self.a * &self.a;
        let b2q = &self.b * &self.b * int(self.rad);
        match a2.cmp(&b2q) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return rational::floor(&self.a);
        }
        // floor(b*sqrt(q)) via an integer square root, then correct exactly.
        let num = self.b.numer();
        let den = self.b.denom();
        let x = num * num * BigInt::from(self.rad);
        let root = x.sqrt();
        let approx_b = if num.is_negative() { -((&root + BigInt::one()) / den) - BigInt::one() } else { &root / den };
        let mut n = rational::floor(&self.a) + approx_b;
        while self.cmp_int(&n) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_int(&(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    fn cmp_int(&self, n: &BigInt) -> Ordering {
        let diff = self - &QuadValue::rational(Rational::from_integer(n.clone()));
        diff.sign().cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * (self.rad as f64).sqrt()
    }

    /// Exact comparison; errors on mixed radicands.
    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.sign().cmp(&0))
    }
}

impl From<Rational> for QuadValue {
    fn from(a: Rational) -> Self {
        QuadValue::rational(a)
    }
}

impl From<i64> for QuadValue {
    fn from(a: i64) -> Self {
        QuadValue::rational(int(a))
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", rational::to_string(&self.a));
        }
        let b = rational::to_string(&self.b.abs());
        let sb = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}({b})*sqrt({})", self.rad)
        } else {
            write!(f, "{} {sb} ({b})*sqrt({})", rational::to_string(&self.a), self.rad)
        }
    }
}

impl std::ops::Neg for &QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        QuadValue::build(self.rad, -&self.a, -&self.b)
    }
}

impl std::ops::Neg for QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        -&self
    }
}

// Operator forms panic on mixed radicands; use the `checked_*` methods when
// the radicands are not known to agree.
macro_rules! quad_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&QuadValue> for &QuadValue {
            type Output = QuadValue;
            fn $m(self, rhs: &QuadValue) -> QuadValue {
                self.$checked(rhs).expect("quadratic values share a radicand")
            }
        }
        impl std::ops::$tr<QuadValue> for QuadValue {
            type Output = QuadValue;
            fn $m(self, rhs: QuadValue) -> QuadValue {
                (&self).$checked(&rhs).expect("quadratic values share a radicand")
            }
        }
    };
}

quad_op!(Add, add, checked_add);
quad_op!(Sub, sub, checked_sub);
quad_op!(Mul, mul, checked_mul);
quad_op!(Div, div, checked_div);
