//! Closed intervals with rational endpoints, plus rigorous enclosures of
//! `ln`, `sqrt`, `pi` and `cos(pi * r)`.
//!
//! Endpoint arithmetic is exact, so every operation is outward-rounded by
//! construction. `round_out` trades width for smaller denominators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::quad::QuadValue;
use super::rational::{self, int, rat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatInterval {
    #[serde(with = "rational::serde_str")]
    lo: Rational,
    #[serde(with = "rational::serde_str")]
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!(
                "empty interval [{}, {}]",
                rational::to_string(&lo),
                rational::to_string(&hi)
            )));
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Intersection with `other`; `None` if disjoint.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RatInterval { lo, hi })
    }

    /// Widen to endpoints with denominator `2^bits`.
    pub fn round_out(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let lo = Rational::new(rational::floor(&(&self.lo * int(scale.clone()))), scale.clone());
        let hi = Rational::new(rational::ceil(&(&self.hi * int(scale.clone()))), scale);
        RatInterval { lo, hi }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.mul(&Self::point(k.clone()))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatInterval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::point(Rational::one());
        }
        let a = rational::pow(&self.lo, e as i64);
        let b = rational::pow(&self.hi, e as i64);
        if e % 2 == 1 || !self.lo.is_negative() {
            let (lo, hi) = if e.is_multiple_of(2) && self.hi.is_negative() { (b, a) } else { (a, b) };
            return RatInterval { lo, hi };
        }
        if self.hi.is_negative() {
            return RatInterval { lo: b, hi: a };
        }
        RatInterval { lo: Rational::zero(), hi: a.max(b) }
    }

    /// Sign if the interval excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

/// Enclosure of `sqrt(x)` for `x >= 0`, width at most `2^-bits`.
pub fn sqrt_interval(x: &Rational, bits: u32) -> RatInterval {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = BigInt::one() << (2 * bits);
    // floor(x * 4^bits) <= x * 4^bits < floor + 1
    let scaled = rational::floor(&(x * int(scale)));
    let r = scaled.sqrt();
    let den = BigInt::one() << bits;
    let lo = Rational::new(r.clone(), den.clone());
    let exact = &r * &r == scaled && rational::is_integer(&(x * int(BigInt::one() << (2 * bits))));
    let hi = if exact { lo.clone() } else { Rational::new(r + 1, den) };
    RatInterval { lo, hi }
}

/// Enclosure of a quadratic value, via an enclosure of `sqrt(rad)`.
pub fn quad_interval(x: &QuadValue, bits: u32) -> RatInterval {
    if x.is_rational() {
        return RatInterval::point(x.a().clone());
    }
    let b_bits = bits + x.b().numer().bits() as u32 + 2;
    let root = sqrt_interval(&int(x.rad()), b_bits);
    RatInterval::point(x.a().clone()).add(&root.scale(x.b()))
}

/// `atanh(z) = z + z^3/3 + ...` for rational `0 <= z <= 1/2`, enclosed to
/// width about `2^-bits`.
fn atanh_interval(z: &Rational, bits: u32) -> RatInterval {
    if z.is_zero() {
        return RatInterval::point(Rational::zero());
    }
    let tol = Rational::new(BigInt::one(), BigInt::one() << (bits + 2));
    let z2 = z * z;
    let mut term = z.clone(); // z^(2k+1)
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        sum += &term / int(2 * k + 1);
        term = &term * &z2;
        k += 1;
        // Tail: sum_{j>=k} z^(2j+1)/(2j+1) <= z^(2k+1) / ((2k+1)(1 - z^2)).
        let tail = &term / (int(2 * k + 1) * (Rational::one() - &z2));
        if tail < tol {
            let iv = RatInterval { lo: sum.clone(), hi: &sum + &tail };
            return iv.round_out(bits + 4);
        }
    }
}

/// Enclosure of `ln(x)` for rational `x > 0`, width roughly `2^-bits`.
///
/// Reduces `x = 2^k * m` with `m` in `[1, 2)` and evaluates
/// `ln y = 2 atanh((y-1)/(y+1))` with an explicit tail bound.
pub fn ln_interval(x: &Rational, bits: u32) -> RatInterval {
    assert!(x.is_positive(), "ln of nonpositive rational");
    if x.is_one() {
        return RatInterval::point(Rational::zero());
    }
    if x < &Rational::one() {
        return ln_interval(&x.recip(), bits).neg();
    }
    let mut k: u64 = 0;
    let mut m = x.clone();
    let two = int(2);
    while m >= two {
        m /= &two;
        k += 1;
    }
    // Guard bits absorb the factor k; fixed at 8 while k < 64.
    let extra = 8 + (64 - k.leading_zeros()).saturating_sub(6);
    let ln_m = if m.is_one() {
        RatInterval::point(Rational::zero())
    } else {
        let z = (&m - Rational::one()) / (&m + Rational::one());
        atanh_interval(&z, bits + 1).scale(&two)
    };
    if k == 0 {
        return ln_m;
    }
    let ln2 = atanh_interval(&rat(1, 3), bits + extra).scale(&two);
    ln2.scale(&int(k)).add(&ln_m)
}

/// Enclosure of `ln(q)` for an integer `q >= 2`. `precision_budget` is the
/// number of bits of accuracy requested; use `hi()` for upper bounds.
pub fn ln_upper(q: u64, precision_budget: u32) -> RatInterval {
    assert!(q >= 2, "ln_upper needs q >= 2");
    ln_interval(&int(q), precision_budget)
}

/// `atan(1/n)` for integer `n >= 2` via the alternating series.
fn atan_recip_interval(n: u64, bits: u32) -> RatInterval {
    let tol = Rational::new(BigInt::one(), BigInt::one() << (bits + 2));
    let x = rat(1, n);
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        let t = &term / int(2 * k + 1);
        if t < tol {
            // Alternating with decreasing terms: the next term bounds the error.
            let iv = if k.is_multiple_of(2) {
                RatInterval { lo: sum.clone(), hi: &sum + &t }
            } else {
                RatInterval { lo: &sum - &t, hi: sum.clone() }
            };
            return iv.round_out(bits + 4);
        }
        if k.is_multiple_of(2) {
            sum += &t;
        } else {
            sum -= &t;
        }
        term = &term * &x2;
        k += 1;
    }
}

/// Enclosure of pi by Machin's formula.
pub fn pi_interval(bits: u32) -> RatInterval {
    let a = atan_recip_interval(5, bits + 6).scale(&int(16));
    let b = atan_recip_interval(239, bits + 6).scale(&int(4));
    a.sub(&b).round_out(bits + 2)
}

/// Enclosure of `cos(x)` for a rational `0 <= x <= 2` by its Taylor series,
/// summed in outward-rounded intervals to keep denominators small.
fn cos_point(x: &Rational, bits: u32) -> RatInterval {
    let prec = bits + 16;
    let tol = Rational::new(BigInt::one(), BigInt::one() << (bits + 2));
    let x2 = RatInterval::point(x * x).round_out(prec);
    let mut term = RatInterval::point(Rational::one()); // x^(2k)/(2k)!
    let mut sum = RatInterval::point(Rational::zero());
    let mut k: u64 = 0;
    loop {
        // For x <= 2 the terms decrease from k = 1 on, so the first omitted
        // term bounds the tail of the alternating series.
        if k >= 1 && *term.hi() < tol {
            let t = term.hi().clone();
            let tail = RatInterval { lo: -t.clone(), hi: t };
            return sum.add(&tail).round_out(bits + 4);
        }
        sum = if k.is_multiple_of(2) { sum.add(&term) } else { sum.sub(&term) }.round_out(prec);
        term = term.mul(&x2).scale(&rat(1, (2 * k + 1) * (2 * k + 2))).round_out(prec);
        k += 1;
    }
}

/// Exact value of `cos(pi * r)` when it is rational (Niven's theorem:
/// only 0, +-1/2, +-1 occur).
pub fn cos_pi_exact(r: &Rational) -> Option<Rational> {
    // Reduce r modulo 2 into [0, 2).
    let two = int(2);
    let k = rational::floor(&(r / &two));
    let r = r - &two * Rational::from_integer(k);
    let table = [
        (rat(0, 1), int(1)),
        (rat(1, 3), rat(1, 2)),
        (rat(1, 2), int(0)),
        (rat(2, 3), rat(-1, 2)),
        (rat(1, 1), int(-1)),
        (rat(4, 3), rat(-1, 2)),
        (rat(3, 2), int(0)),
        (rat(5, 3), rat(1, 2)),
    ];
    table.into_iter().find(|(x, _)| *x == r).map(|(_, c)| c)
}

/// Enclosure of `cos(pi * r)` for any rational `r`.
pub fn cos_pi_interval(r: &Rational, bits: u32) -> RatInterval {
    if let Some(c) = cos_pi_exact(r) {
        return RatInterval::point(c);
    }
    let two = int(2);
    let k = rational::floor(&(r / &two));
    let mut r = r - &two * Rational::from_integer(k);
    // cos(pi r) = cos(pi (2 - r)); fold into [0, 1].
    if r > Rational::one() {
        r = &two - &r;
    }
    // cos(pi r) = -cos(pi (1 - r)); fold into [0, 1/2].
    let mut negate = false;
    if r > rat(1, 2) {
        r = Rational::one() - &r;
        negate = true;
    }
    let pi = pi_interval(bits + 4);
    let x = pi.scale(&r);
    // cos is decreasing on [0, pi/2] and x stays below 2.
    let lo = cos_point(&x.hi().clone().min(int(2)), bits + 2);
    let hi = cos_point(x.lo(), bits + 2);
    let iv = RatInterval { lo: lo.lo().clone(), hi: hi.hi().clone() };
    let iv = if negate { iv.neg() } else { iv };
    iv.round_out(bits + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // 50-digit reference values (mpmath).
    const LN2: &str = "0.69314718055994530941723212145817656807550013436025";
    const LN3: &str = "1.0986122886681096913952452369225257046474905578227";
    const PI: &str = "3.1415926535897932384626433832795028841971693993751";

    fn dec(s: &str) -> Rational {
        let (i, f) = s.split_once('.').unwrap();
        let den = BigInt::from(10u32).pow(f.len() as u32);
        let num: BigInt = format!("{i}{f}").parse().unwrap();
        Rational::new(num, den)
    }

    /// The 50-digit decimal truncation `d` satisfies d <= x < d + 1e-49.
    fn assert_encloses(iv: &RatInterval, s: &str) {
        let d = dec(s);
        let ulp = rat(1, BigInt::from(10u32).pow(49));
        assert!(iv.lo() <= &(&d + &ulp) && &d <= iv.hi(), "{iv:?} vs {s}");
    }

    #[test]
    fn ln_examples() {
        let l2 = ln_upper(2, 100);
        assert_encloses(&l2, LN2);
        assert!(l2.width() < rat(1, BigInt::one() << 90));
        assert_encloses(&ln_upper(3, 100), LN3);
        let l4 = ln_upper(4, 100);
        let twice = ln_upper(2, 100).scale(&int(2));
        assert_eq!(l4, twice);
    }

    #[test]
    fn ln_width_shrinks() {
        let coarse = ln_upper(7, 10);
        let fine = ln_upper(7, 60);
        assert!(fine.width() < coarse.width());
        assert!(fine.intersect(&coarse).is_some());
    }

    #[test]
    fn ln_below_one() {
        let iv = ln_interval(&rat(1, 2), 80);
        assert_encloses(&iv.neg(), LN2);
    }

    #[test]
    fn pi_enclosure() {
        let iv = pi_interval(120);
        assert_encloses(&iv, PI);
        assert!(iv.width() < rat(1, BigInt::one() << 110));
    }

    #[test]
    fn cos_values() {
        assert_eq!(cos_pi_interval(&rat(1, 2), 50), RatInterval::point(int(0)));
        assert_eq!(cos_pi_interval(&rat(-7, 3), 50), RatInterval::point(rat(1, 2)));
        // cos(pi/4) = sqrt(2)/2 = 0.70710678118654752440084436210484903928483593768847
        let iv = cos_pi_interval(&rat(1, 4), 120);
        assert_encloses(&iv, "0.70710678118654752440084436210484903928483593768847");
        let iv = cos_pi_interval(&rat(3, 4), 120);
        assert_encloses(&iv.neg(), "0.70710678118654752440084436210484903928483593768847");
        // cos(pi/5) = 0.80901699437494742410229341718281905886436444141...
        let iv = cos_pi_interval(&rat(11, 5), 120);
        assert_encloses(&iv, "0.80901699437494742410229341718281905886436444141");
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_interval(&int(9), 20), RatInterval::point(int(3)));
        let iv = sqrt_interval(&int(2), 150);
        assert_encloses(&iv, "1.4142135623730950488016887242096980785696718753769");
    }

    fn arb_iv() -> impl Strategy<Value = RatInterval> {
        (-500i64..500, 1i64..30, 0i64..500, 1i64..30).prop_map(|(a, d1, w, d2)| {
            let lo = rat(a, d1);
            let hi = &lo + rat(w, d2);
            RatInterval::new(lo, hi).unwrap()
        })
    }

    fn sample(iv: &RatInterval, t: u32) -> Rational {
        iv.lo() + iv.width() * rat(t, 16)
    }

    proptest! {
        #[test]
        fn arithmetic_is_sound(x in arb_iv(), y in arb_iv(), s in 0u32..=16, t in 0u32..=16) {
            let p = sample(&x, s);
            let r = sample(&y, t);
            prop_assert!(x.add(&y).contains(&(&p + &r)));
            prop_assert!(x.sub(&y).contains(&(&p - &r)));
            prop_assert!(x.mul(&y).contains(&(&p * &r)));
            prop_assert!(x.pow(3).contains(&rational::pow(&p, 3)));
            prop_assert!(x.pow(2).contains(&rational::pow(&p, 2)));
            if let Ok(q) = x.div(&y) {
                prop_assert!(q.contains(&(&p / &r)));
            }
            prop_assert!(x.is_subset_of(&x.round_out(4)));
        }
    }
}
