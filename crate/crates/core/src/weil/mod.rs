//! Isogeny classes given by Weil polynomials: validation, Frobenius power
//! sums, point counts of decompositions, real-root isolation and the
//! per-angle index `m = ceil(pi / (2 theta))`.

mod angles;
mod roots;

pub use angles::{angle_indices, angle_indices_general, AngleIndex, AngleKind, AngleSource, ANGLE_SEARCH_LIMIT};
pub use roots::{isolate_real_roots, real_weil_polynomial, v_polynomial, RealRoot, RootPosition};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `q = p^a`, or an error when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidFieldSize(q));
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut rest = q;
    let mut a = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        a += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidFieldSize(q));
    }
    Ok((p, a))
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Traces of Frobenius of elliptic curves over `F_q`, sorted ascending.
///
/// Ordinary traces are those prime to `p` in the Hasse interval; the
/// supersingular ones follow the classification for `q = p^a`.
pub fn admissible_elliptic_traces(q: u64) -> Result<Vec<i64>> {
    let (p, a) = prime_power(q)?;
    let p = p as i64;
    let qi = q as i64;
    let m = (4 * q).sqrt() as i64;
    let mut out: Vec<i64> = (-m..=m).filter(|t| gcd(*t, p) == 1).collect();
    let even = a % 2 == 0;
    if even {
        let r = q.sqrt() as i64;
        out.extend([2 * r, -2 * r]);
        if p % 3 != 1 {
            out.extend([r, -r]);
        }
    }
    if !even || p % 4 != 1 {
        out.push(0);
    }
    if !even && (p == 2 || p == 3) {
        let t = p.pow(a.div_ceil(2));
        out.extend([t, -t]);
    }
    debug_assert!(out.iter().all(|t| t * t <= 4 * qi));
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Elliptic { trace: i64 },
    General,
}

/// One isogeny class over `F_q`, represented by its Weil polynomial
/// `x^(2d) + c_1 x^(2d-1) + ... + c_(2d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeilClass {
    q: u64,
    p: u64,
    a: u32,
    dim: usize,
    coeffs: Vec<BigInt>,
    kind: ClassKind,
}

/// What [`WeilClass::from_coeffs`] checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub functional_equation: bool,
    pub real_roots_in_weil_range: bool,
    /// p-adic occurrence conditions are never checked for d >= 2.
    pub honda_tate: &'static str,
}

impl WeilClass {
    /// Elliptic class with Weil polynomial `x^2 - t x + q`.
    pub fn elliptic(q: u64, t: i64, enforce_admissible: bool) -> Result<Self> {
        let (p, a) = prime_power(q)?;
        if (t as i128) * (t as i128) > 4 * q as i128 {
            return Err(Error::WeilBound { q, trace: t });
        }
        if enforce_admissible && !admissible_elliptic_traces(q)?.contains(&t) {
            return Err(Error::TraceNotAdmissible { q, trace: t });
        }
        Ok(WeilClass {
            q,
            p,
            a,
            dim: 1,
            coeffs: vec![BigInt::one(), BigInt::from(-t), BigInt::from(q)],
            kind: ClassKind::Elliptic { trace: t },
        })
    }

    /// General class from the full coefficient list `[1, c_1, ..., c_(2d)]`.
    /// Checks the functional equation and that the real Weil polynomial has
    /// all of its roots real and inside `[-2 sqrt(q), 2 sqrt(q)]`.
    pub fn from_coeffs(q: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        let (p, a) = prime_power(q)?;
        let n = coeffs.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidWeilPolynomial(format!("expected 2d+1 coefficients with d >= 1, got {n}")));
        }
        if !coeffs[0].is_one() {
            return Err(Error::InvalidWeilPolynomial("polynomial is not monic".into()));
        }
        let d = (n - 1) / 2;
        let qb = BigInt::from(q);
        for j in 0..=d {
            if coeffs[2 * d - j] != num_traits::pow(qb.clone(), d - j) * &coeffs[j] {
                return Err(Error::InvalidWeilPolynomial(format!("functional equation fails at c_{}", 2 * d - j)));
            }
        }
        let kind = if d == 1 {
            ClassKind::Elliptic { trace: -coeffs[1].to_i64().unwrap_or(i64::MAX) }
        } else {
            ClassKind::General
        };
        if let ClassKind::Elliptic { trace } = kind {
            if (trace as i128) * (trace as i128) > 4 * q as i128 {
                return Err(Error::InvalidWeilPolynomial(format!("trace {trace} violates Weil bound for q = {q}")));
            }
        }
        let class = WeilClass { q, p, a, dim: d, coeffs, kind };
        // Real-rootedness in the Weil range; the isolation errors otherwise.
        isolate_real_roots(&class)?;
        Ok(class)
    }

    pub fn from_int_coeffs(q: u64, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(q, coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    /// Product of classes over the same field (Weil polynomials multiply).
    pub fn product(classes: &[WeilClass]) -> Result<Self> {
        let first = classes.first().ok_or_else(|| Error::Invalid("empty product".into()))?;
        let mut acc: Vec<BigInt> = vec![BigInt::one()];
        for c in classes {
            if c.q != first.q {
                return Err(Error::InconsistentFieldSize { expected: first.q, found: c.q });
            }
            let mut out = vec![BigInt::zero(); acc.len() + c.coeffs.len() - 1];
            for (i, x) in acc.iter().enumerate() {
                for (j, y) in c.coeffs.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            acc = out;
        }
        Self::from_coeffs(first.q, acc)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn trace(&self) -> Option<i64> {
        match self.kind {
            ClassKind::Elliptic { trace } => Some(trace),
            ClassKind::General => None,
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            ClassKind::Elliptic { trace } => format!("t={trace}"),
            ClassKind::General => {
                let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
                format!("weil[{}]", c.join(","))
            }
        }
    }

    pub fn validation_report(&self) -> ValidationReport {
        ValidationReport {
            functional_equation: true,
            real_roots_in_weil_range: true,
            honda_tate: if self.dim == 1 { "not needed" } else { "not checked" },
        }
    }

    /// Frobenius power sums `p(1), ..., p(n_max)`.
    pub fn power_sums(&self, n_max: usize) -> PowerSums {
        power_sums(self, n_max)
    }
}

/// `p(k) = sum of alpha^k` over all `2d` Frobenius eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums {
    values: Vec<BigInt>,
}

impl PowerSums {
    /// `p(k)` for `1 <= k <= n_max`.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.values[k - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Newton's identities up to `k = 2d`, then the linear recurrence.
pub fn power_sums(c: &WeilClass, n_max: usize) -> PowerSums {
    if let ClassKind::Elliptic { trace } = c.kind {
        return PowerSums { values: elliptic_power_sums(c.q, trace, n_max) };
    }
    let deg = c.coeffs.len() - 1;
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        let mut s = BigInt::zero();
        for i in 1..k.min(deg + 1) {
            s += &c.coeffs[i] * &p[k - i - 1];
        }
        if k <= deg {
            s += &c.coeffs[k] * BigInt::from(k);
        }
        p.push(-s);
    }
    PowerSums { values: p }
}

/// `a(0) = 2, a(1) = t, a(k) = t a(k-1) - q a(k-2)`; returns `a(1..=n)`.
pub fn elliptic_power_sums(q: u64, t: i64, n_max: usize) -> Vec<BigInt> {
    let (t, q) = (BigInt::from(t), BigInt::from(q));
    let mut prev = BigInt::from(2);
    let mut cur = t.clone();
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        out.push(cur.clone());
        let next = &t * &cur - &q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// Nonnegative multiplicities over a list of classes sharing one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionVector {
    classes: Vec<WeilClass>,
    e: Vec<u64>,
}

impl DecompositionVector {
    pub fn new(classes: Vec<WeilClass>, e: Vec<u64>) -> Result<Self> {
        if classes.len() != e.len() {
            return Err(Error::Invalid(format!("{} classes but {} multiplicities", classes.len(), e.len())));
        }
        if let Some(first) = classes.first() {
            if let Some(bad) = classes.iter().find(|c| c.q != first.q) {
                return Err(Error::InconsistentFieldSize { expected: first.q, found: bad.q });
            }
        }
        Ok(DecompositionVector { classes, e })
    }

    pub fn classes(&self) -> &[WeilClass] {
        &self.classes
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.e
    }

    /// Field size; `None` for an empty class list.
    pub fn q(&self) -> Option<u64> {
        self.classes.first().map(|c| c.q)
    }

    /// `sum e_j * dim_j`.
    pub fn genus(&self) -> u64 {
        self.classes.iter().zip(&self.e).map(|(c, e)| c.dim as u64 * e).sum()
    }

    /// Renders as `E_{-2}^4 x E_{-1}^7 x ...`, skipping zero exponents.
    pub fn display_product(&self) -> String {
        let parts: Vec<String> = self
            .classes
            .iter()
            .zip(&self.e)
            .filter(|(_, e)| **e > 0)
            .map(|(c, e)| match c.kind {
                ClassKind::Elliptic { trace } => format!("E_{{{trace}}}^{e}"),
                ClassKind::General => format!("A[{}]^{e}", c.label()),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" × ")
        }
    }
}

/// `q^m + 1 - sum e_j p_j(m)`; negative values signal infeasibility.
///
/// An empty decomposition needs the field size explicitly, see
/// [`point_count_over`].
pub fn point_count(dec: &DecompositionVector, m: usize) -> BigInt {
    let q = dec.q().expect("decomposition with no classes has no field size");
    point_count_over(q, dec, m)
}

pub fn point_count_over(q: u64, dec: &DecompositionVector, m: usize) -> BigInt {
    assert!(m >= 1, "extension degree must be positive");
    let mut n = num_traits::pow(BigInt::from(q), m) + 1;
    for (c, e) in dec.classes.iter().zip(&dec.e) {
        if *e > 0 {
            n -= power_sums(c, m).get(m) * BigInt::from(*e);
        }
    }
    n
}

/// JSON form of a class: `{"kind":"elliptic","q":2,"trace":-2}` or
/// `{"kind":"weil","q":2,"coeffs":[1,0,3,0,4]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassSpec {
    Elliptic { q: u64, trace: i64 },
    Weil { q: u64, coeffs: Vec<i64> },
}

impl ClassSpec {
    pub fn build(&self, enforce_admissible: bool) -> Result<WeilClass> {
        match self {
            ClassSpec::Elliptic { q, trace } => WeilClass::elliptic(*q, *trace, enforce_admissible),
            ClassSpec::Weil { q, coeffs } => WeilClass::from_int_coeffs(*q, coeffs),
        }
    }
}

impl From<&WeilClass> for ClassSpec {
    fn from(c: &WeilClass) -> Self {
        match c.kind {
            ClassKind::Elliptic { trace } => ClassSpec::Elliptic { q: c.q, trace },
            ClassKind::General => ClassSpec::Weil {
                q: c.q,
                coeffs: c.coeffs.iter().map(|x| x.to_i64().expect("coefficient fits i64")).collect(),
            },
        }
    }
}

impl Serialize for WeilClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeilClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ClassSpec::deserialize(d)?.build(false).map_err(serde::de::Error::custom)
    }
}

/// Elliptic classes for a list of traces over one field.
pub fn elliptic_classes(q: u64, traces: &[i64], enforce_admissible: bool) -> Result<Vec<WeilClass>> {
    traces.iter().map(|t| WeilClass::elliptic(q, *t, enforce_admissible)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert_eq!(prime_power(6), Err(Error::InvalidFieldSize(6)));
        assert_eq!(prime_power(1), Err(Error::InvalidFieldSize(1)));
    }

    #[test]
    fn elliptic_construction() {
        let c = WeilClass::elliptic(2, -2, true).unwrap();
        assert_eq!(c.coeffs(), ints(&[1, 2, 2]).as_slice());
        assert_eq!(WeilClass::elliptic(2, 3, false), Err(Error::WeilBound { q: 2, trace: 3 }));
        assert_eq!(WeilClass::elliptic(8, 2, true), Err(Error::TraceNotAdmissible { q: 8, trace: 2 }));
        assert!(WeilClass::elliptic(8, 2, false).is_ok());
    }

    #[test]
    fn waterhouse_lists() {
        assert_eq!(admissible_elliptic_traces(2).unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(admissible_elliptic_traces(3).unwrap(), vec![-3, -2, -1, 0, 1, 2, 3]);
        assert_eq!(admissible_elliptic_traces(8).unwrap(), vec![-5, -4, -3, -1, 0, 1, 3, 4, 5]);
        assert_eq!(admissible_elliptic_traces(12), Err(Error::InvalidFieldSize(12)));
        // q = 25: p = 5 = 1 mod 4 excludes t = 0, p = 2 mod 3 keeps +-5.
        let t25 = admissible_elliptic_traces(25).unwrap();
        assert!(!t25.contains(&0) && t25.contains(&5) && t25.contains(&10));
        // q = 49: p = 7 = 1 mod 3 excludes +-7, p = 3 mod 4 keeps 0.
        let t49 = admissible_elliptic_traces(49).unwrap();
        assert!(t49.contains(&0) && !t49.contains(&7) && t49.contains(&14));
    }

    #[test]
    fn power_sum_examples() {
        let c = WeilClass::elliptic(2, -2, false).unwrap();
        assert_eq!(c.power_sums(8).values(), ints(&[-2, 0, 4, -8, 8, 0, -16, 32]).as_slice());
        let c = WeilClass::elliptic(2, 1, false).unwrap();
        assert_eq!(c.power_sums(4).values(), ints(&[1, -3, -5, 1]).as_slice());
        let c = WeilClass::from_int_coeffs(2, &[1, 0, 3, 0, 4]).unwrap();
        assert_eq!(c.power_sums(2).values(), ints(&[0, -6]).as_slice());
    }

    #[test]
    fn newton_matches_elliptic_recurrence() {
        // Force the Newton path on a degree-2 polynomial by building it as
        // a one-factor product and comparing with the trace recurrence.
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for t in admissible_elliptic_traces(q).unwrap() {
                let c = WeilClass::elliptic(q, t, true).unwrap();
                let general = WeilClass { kind: ClassKind::General, ..c.clone() };
                assert_eq!(power_sums(&general, 20), power_sums(&c, 20));
            }
        }
    }

    #[test]
    fn functional_equation_enforced() {
        assert!(matches!(WeilClass::from_int_coeffs(2, &[1, 0, 3, 0, 5]), Err(Error::InvalidWeilPolynomial(_))));
        assert!(matches!(WeilClass::from_int_coeffs(2, &[2, 0, 4]), Err(Error::InvalidWeilPolynomial(_))));
        assert!(matches!(WeilClass::from_int_coeffs(2, &[1, 0, 3, 0]), Err(Error::InvalidWeilPolynomial(_))));
    }

    #[test]
    fn point_count_examples() {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let cases = [([4, 7, 5, 3, 7], 1), ([5, 6, 5, 4, 6], 3), ([6, 5, 5, 5, 5], 5)];
        for (e, n) in cases {
            let dec = DecompositionVector::new(classes.clone(), e.to_vec()).unwrap();
            assert_eq!(point_count(&dec, 1), BigInt::from(n));
            assert_eq!(dec.genus(), 26);
        }
        let zero = DecompositionVector::new(classes, vec![0; 5]).unwrap();
        assert_eq!(point_count(&zero, 3), BigInt::from(9));
    }

    #[test]
    fn product_display() {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let dec = DecompositionVector::new(classes, vec![4, 7, 5, 3, 7]).unwrap();
        assert_eq!(dec.display_product(), "E_{-2}^4 × E_{-1}^7 × E_{0}^5 × E_{1}^3 × E_{2}^7");
    }

    #[test]
    fn class_json() {
        let c: WeilClass = serde_json::from_str(r#"{"kind":"elliptic","q":2,"trace":-2}"#).unwrap();
        assert_eq!(c, WeilClass::elliptic(2, -2, false).unwrap());
        let g: WeilClass = serde_json::from_str(r#"{"kind":"weil","q":2,"coeffs":[1,0,3,0,4]}"#).unwrap();
        assert_eq!(g.dim(), 2);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"kind":"weil","q":2,"coeffs":[1,0,3,0,4]}"#);
        let bad: std::result::Result<WeilClass, _> = serde_json::from_str(r#"{"kind":"elliptic","q":2,"trace":3}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn product_of_elliptics() {
        let a = WeilClass::elliptic(2, 1, true).unwrap();
        let b = WeilClass::elliptic(2, -1, true).unwrap();
        let p = WeilClass::product(&[a, b]).unwrap();
        assert_eq!(p.coeffs(), ints(&[1, 0, 3, 0, 4]).as_slice());
        let c = WeilClass::elliptic(3, 1, true).unwrap();
        let d = WeilClass::elliptic(2, 1, true).unwrap();
        assert!(matches!(WeilClass::product(&[d, c]), Err(Error::InconsistentFieldSize { .. })));
    }
}
