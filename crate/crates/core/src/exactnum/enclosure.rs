//! A real number known either exactly in Q(sqrt(q)) or by a rigorous
//! rational enclosure.

use num_traits::One;

use super::interval::{quad_interval, RatInterval};
use super::quad::QuadValue;
use super::rational::Rational;

/// Bits of precision used when an exact value has to be widened.
pub const DEFAULT_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enclosure {
    Exact(QuadValue),
    Approx(RatInterval),
}

impl Enclosure {
    pub fn rational(x: Rational) -> Self {
        Enclosure::Exact(QuadValue::rational(x))
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn exact(&self) -> Option<&QuadValue> {
        match self {
            Enclosure::Exact(v) => Some(v),
            Enclosure::Approx(_) => None,
        }
    }

    pub fn interval(&self, bits: u32) -> RatInterval {
        match self {
            Enclosure::Exact(v) => quad_interval(v, bits),
            Enclosure::Approx(iv) => iv.clone(),
        }
    }

    fn combine(
        &self,
        o: &Self,
        bits: u32,
        exact: impl Fn(&QuadValue, &QuadValue) -> crate::Result<QuadValue>,
        approx: impl Fn(&RatInterval, &RatInterval) -> RatInterval,
    ) -> Self {
        if let (Enclosure::Exact(a), Enclosure::Exact(b)) = (self, o) {
            if let Ok(v) = exact(a, b) {
                return Enclosure::Exact(v);
            }
        }
        Enclosure::Approx(approx(&self.interval(bits), &o.interval(bits)))
    }

    pub fn add(&self, o: &Self, bits: u32) -> Self {
        self.combine(o, bits, |a, b| a.checked_add(b), |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self, bits: u32) -> Self {
        self.combine(o, bits, |a, b| a.checked_sub(b), |a, b| a.sub(b))
    }

    pub fn mul(&self, o: &Self, bits: u32) -> Self {
        self.combine(o, bits, |a, b| a.checked_mul(b), |a, b| a.mul(b))
    }

    /// Sign when decidable: exact values always, intervals when they exclude 0.
    pub fn sign(&self) -> Option<i32> {
        match self {
            Enclosure::Exact(v) => Some(v.sign()),
            Enclosure::Approx(iv) => iv.sign(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Enclosure::Exact(v) => v.to_f64(),
            Enclosure::Approx(iv) => super::rational::to_f64(&iv.midpoint()),
        }
    }
}
