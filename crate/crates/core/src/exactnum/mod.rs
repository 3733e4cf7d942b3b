//! Exact arithmetic kernel: rationals, the quadratic field Q(sqrt(q)),
//! rational intervals, and polynomials over Q.

pub mod enclosure;
pub mod interval;
pub mod poly;
pub mod quad;
pub mod rational;

pub use enclosure::Enclosure;
pub use interval::{ln_upper, RatInterval};
pub use poly::{RatPoly, SturmChain};
pub use quad::QuadValue;
pub use rational::Rational;

use num_bigint::BigInt;

/// Exact sign of `a + b*sqrt(q)`.
pub fn quad_sign(x: &QuadValue) -> i32 {
    x.sign()
}

/// Largest integer not exceeding `x`.
pub fn quad_floor(x: &QuadValue) -> BigInt {
    x.floor()
}
