//! Exact linear and integer programming over place-count systems:
//! maximize `sum dim_j e_j` subject to `A e <= b`, `e >= 0`.

mod branch;
mod enumerate;
mod simplex;

pub use branch::{ilp_maximize, ilp_maximize_with_stats, IlpStats};
pub use enumerate::{enumerate_decompositions, enumerate_vectors, enumerate_vectors_parallel};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, int, Rational};
use crate::places::{inequality_system, LinearSystem};
use crate::weil::WeilClass;

/// Degree ceiling for automatic escalation.
pub const DEFAULT_D_MAX: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPResult {
    pub status: LpStatus,
    #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub primal: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub dual: Vec<Rational>,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => rational::serde_str::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "rational::serde_str")] Rational);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

impl LPResult {
    fn status_only(status: LpStatus) -> Self {
        LPResult { status, value: None, primal: vec![], dual: vec![] }
    }

    /// `floor(value)` for optimal results.
    pub fn genus_cap(&self) -> Option<BigInt> {
        self.value.as_ref().map(rational::floor)
    }
}

pub(crate) fn objective(sys: &LinearSystem) -> Vec<Rational> {
    sys.dims.iter().map(|d| int(*d)).collect()
}

/// Exact optimum over nonnegative real vectors.
pub fn lp_maximize(sys: &LinearSystem) -> LPResult {
    let c = objective(sys);
    match simplex::maximize(&sys.a, &sys.b, &c) {
        simplex::Outcome::Optimal { value, primal, dual } => {
            let yb: Rational = dual.iter().zip(&sys.b).map(|(y, b)| y * b).sum();
            assert_eq!(yb, value, "strong duality failed");
            LPResult { status: LpStatus::Optimal, value: Some(value), primal, dual }
        }
        simplex::Outcome::Unbounded => LPResult::status_only(LpStatus::Unbounded),
        simplex::Outcome::Infeasible => LPResult::status_only(LpStatus::Infeasible),
    }
}

/// A nonnegative combination of rows dominating the objective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(default = "format_one")]
    pub format: u32,
    #[serde(with = "rational::serde_vec")]
    pub multipliers: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub combined: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub scale: Rational,
    #[serde(with = "rational::serde_bigint")]
    pub genus_cap: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<LinearSystem>,
}

fn format_one() -> u32 {
    1
}

/// Check `y >= 0`, form `y^T A` and `y^T b`, and certify
/// `sum dim_j e_j <= floor(y^T b / c)` with `c = min_j (y^T A)_j / dim_j > 0`.
pub fn verify_certificate(sys: &LinearSystem, y: &[Rational]) -> Result<Certificate> {
    if y.len() != sys.rows() {
        return Err(Error::MultiplierCount { expected: sys.rows(), found: y.len() });
    }
    if let Some(i) = y.iter().position(|v| v.is_negative()) {
        return Err(Error::NegativeMultiplier(i));
    }
    let combined: Vec<Rational> =
        (0..sys.cols()).map(|j| sys.a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum()).collect();
    let rhs: Rational = y.iter().zip(&sys.b).map(|(yi, b)| yi * b).sum();
    let scale = combined.iter().zip(&sys.dims).map(|(v, d)| v / int(*d)).min().ok_or(Error::NotDominating)?;
    if !scale.is_positive() {
        return Err(Error::NotDominating);
    }
    let genus_cap = rational::floor(&(&rhs / &scale));
    Ok(Certificate { format: 1, multipliers: y.to_vec(), combined, rhs, scale, genus_cap, system: None })
}

impl Certificate {
    /// Recompute from the embedded system and check every stated field.
    pub fn check(&self) -> Result<BigInt> {
        let sys = self.system.as_ref().ok_or_else(|| Error::Invalid("certificate has no system".into()))?;
        sys.validate()?;
        let fresh = verify_certificate(sys, &self.multipliers)?;
        for (name, ok) in [
            ("combined", fresh.combined == self.combined),
            ("rhs", fresh.rhs == self.rhs),
            ("scale", fresh.scale == self.scale),
            ("genus_cap", fresh.genus_cap == self.genus_cap),
        ] {
            if !ok {
                return Err(Error::Invalid(format!("stated {name} does not match the recomputed value")));
            }
        }
        Ok(fresh.genus_cap)
    }

    pub fn with_system(mut self, sys: &LinearSystem) -> Self {
        self.system = Some(sys.clone());
        self
    }
}

/// Result of a solve at the smallest degree that bounds the genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoSolve {
    pub degree: usize,
    pub system: LinearSystem,
    pub lp: LPResult,
    /// Present when an integer solve was requested.
    pub ilp: Option<LPResult>,
}

/// Try `D = 1, 2, ..., d_max` until the relaxation is bounded.
pub fn solve_auto(q: u64, classes: &[WeilClass], d_max: usize, integer: bool) -> Result<AutoSolve> {
    let full = inequality_system(q, classes, d_max)?;
    for d in 1..=d_max {
        let sys = full.truncated(d);
        let lp = lp_maximize(&sys);
        match lp.status {
            LpStatus::Unbounded => continue,
            LpStatus::Infeasible => return Err(Error::Infeasible),
            LpStatus::Optimal => {
                let ilp = if integer { Some(ilp_maximize(&sys)?) } else { None };
                return Ok(AutoSolve { degree: d, system: sys, lp, ilp });
            }
        }
    }
    Err(Error::Unbounded)
}
