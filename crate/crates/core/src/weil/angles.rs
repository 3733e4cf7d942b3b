//! Classification of nonnegative Frobenius angles and the index
//! `m = ceil(pi / (2 theta))`, the least `k >= 1` with `cos(k theta) <= 0`.

use num_bigint::BigInt;
use num_traits::Signed;

use super::roots::{isolate_real_roots, v_polynomial, RealRoot, RootPosition};
use super::{ClassKind, WeilClass};
use crate::error::{Error, Result};
use crate::exactnum::RatPoly;

/// Guard on the search for `m`; genuine interior angles never get close.
pub const ANGLE_SEARCH_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AngleKind {
    Zero,
    Pi,
    Interior { m: u64 },
}

impl AngleKind {
    pub fn m(&self) -> Option<u64> {
        match self {
            AngleKind::Interior { m } => Some(*m),
            _ => None,
        }
    }
}

/// Where the angle came from: an elliptic trace (exact integer power sums)
/// or an isolated root of a real Weil polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AngleSource {
    Trace { q: u64, t: i64 },
    Root(RealRoot),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleIndex {
    pub kind: AngleKind,
    pub multiplicity: usize,
    pub source: AngleSource,
}

impl AngleIndex {
    pub fn q(&self) -> u64 {
        match &self.source {
            AngleSource::Trace { q, .. } => *q,
            AngleSource::Root(r) => r.q(),
        }
    }

    /// Whether two angles over the same field coincide.
    pub fn same_angle(&self, other: &AngleIndex) -> bool {
        if self.q() != other.q() {
            return false;
        }
        match (&self.source, &other.source) {
            (AngleSource::Trace { t: a, .. }, AngleSource::Trace { t: b, .. }) => a == b,
            (AngleSource::Root(a), AngleSource::Root(b)) => a.same_root(b),
            (AngleSource::Trace { t, q }, AngleSource::Root(r))
            | (AngleSource::Root(r), AngleSource::Trace { t, q }) => {
                let lin = RatPoly::from_ints([-t, 1]);
                match r.position() {
                    RootPosition::Interior => {
                        r.interval().contains(&crate::exactnum::rational::int(*t)) && r.sign_of(&lin) == 0
                    }
                    RootPosition::Top => (*t as i128) * (*t as i128) == 4 * *q as i128 && *t > 0,
                    RootPosition::Bottom => (*t as i128) * (*t as i128) == 4 * *q as i128 && *t < 0,
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match &self.source {
            AngleSource::Trace { t, .. } => format!("t={t}"),
            AngleSource::Root(r) => format!("root of {} near {}", r.factor(), {
                let m = r.interval().midpoint();
                crate::exactnum::rational::to_decimal(&m, 6)
            }),
        }
    }
}

fn elliptic_index(q: u64, t: i64) -> Result<AngleKind> {
    if (t as i128) * (t as i128) == 4 * q as i128 {
        return Ok(if t > 0 { AngleKind::Zero } else { AngleKind::Pi });
    }
    let (tb, qb) = (BigInt::from(t), BigInt::from(q));
    let mut prev = BigInt::from(2);
    let mut cur = tb.clone();
    for k in 1..=ANGLE_SEARCH_LIMIT {
        if !cur.is_positive() {
            return Ok(AngleKind::Interior { m: k });
        }
        let next = &tb * &cur - &qb * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Err(Error::AngleSearchLimit(ANGLE_SEARCH_LIMIT))
}

/// Index of the angle at an isolated root `y = 2 sqrt(q) cos(theta)`,
/// found from the sign of `V_k(y) = 2 q^(k/2) cos(k theta)`.
pub(crate) fn root_index(root: &RealRoot) -> Result<AngleKind> {
    match root.position() {
        RootPosition::Top => return Ok(AngleKind::Zero),
        RootPosition::Bottom => return Ok(AngleKind::Pi),
        RootPosition::Interior => {}
    }
    let q = root.q();
    let qr = crate::exactnum::rational::int(q);
    let mut prev = v_polynomial(q, 0);
    let mut cur = v_polynomial(q, 1);
    for k in 1..=ANGLE_SEARCH_LIMIT {
        if root.sign_of(&cur) <= 0 {
            return Ok(AngleKind::Interior { m: k });
        }
        let next = cur.mul(&RatPoly::x()).sub(&prev.scale(&qr));
        prev = std::mem::replace(&mut cur, next);
    }
    Err(Error::AngleSearchLimit(ANGLE_SEARCH_LIMIT))
}

/// Nonnegative Frobenius angles of a class in increasing order, each with
/// its classification and multiplicity. Elliptic classes use the integer
/// trace recurrence.
pub fn angle_indices(c: &WeilClass) -> Result<Vec<AngleIndex>> {
    match c.kind() {
        ClassKind::Elliptic { trace } => Ok(vec![AngleIndex {
            kind: elliptic_index(c.q(), *trace)?,
            multiplicity: 1,
            source: AngleSource::Trace { q: c.q(), t: *trace },
        }]),
        ClassKind::General => angle_indices_general(c),
    }
}

/// The root-isolation route, valid for every class.
pub fn angle_indices_general(c: &WeilClass) -> Result<Vec<AngleIndex>> {
    let mut roots = isolate_real_roots(c)?;
    // Angles increase as y decreases.
    roots.reverse();
    roots
        .into_iter()
        .map(|r| Ok(AngleIndex { kind: root_index(&r)?, multiplicity: r.multiplicity(), source: AngleSource::Root(r) }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::admissible_elliptic_traces;

    fn kinds(c: &WeilClass) -> Vec<AngleKind> {
        angle_indices(c).unwrap().into_iter().map(|a| a.kind).collect()
    }

    #[test]
    fn elliptic_examples() {
        let e = |q, t| WeilClass::elliptic(q, t, true).unwrap();
        assert_eq!(kinds(&e(2, 2)), vec![AngleKind::Interior { m: 2 }]);
        assert_eq!(kinds(&e(2, 0)), vec![AngleKind::Interior { m: 1 }]);
        assert_eq!(kinds(&e(4, -4)), vec![AngleKind::Pi]);
        assert_eq!(kinds(&e(4, 4)), vec![AngleKind::Zero]);
        let ms: Vec<_> = [-2, -1, 0, 1, 2].iter().map(|t| kinds(&e(2, *t))[0].m().unwrap()).collect();
        assert_eq!(ms, vec![1, 1, 1, 2, 2]);
    }

    #[test]
    fn elliptic_and_general_routes_agree() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for t in admissible_elliptic_traces(q).unwrap() {
                let c = WeilClass::elliptic(q, t, true).unwrap();
                let fast = kinds(&c);
                let slow: Vec<_> = angle_indices_general(&c).unwrap().into_iter().map(|a| a.kind).collect();
                assert_eq!(fast, slow, "q={q} t={t}");
            }
        }
    }

    #[test]
    fn m_matches_float_formula() {
        // ceil(pi / (2 theta)) with theta = acos(t / (2 sqrt q)), away from
        // exact ties.
        for q in [5u64, 7, 11, 13] {
            for t in admissible_elliptic_traces(q).unwrap() {
                let theta = (t as f64 / (2.0 * (q as f64).sqrt())).acos();
                let x = std::f64::consts::PI / (2.0 * theta);
                if (x - x.round()).abs() < 1e-9 {
                    continue;
                }
                let c = WeilClass::elliptic(q, t, true).unwrap();
                assert_eq!(kinds(&c)[0].m(), Some(x.ceil() as u64), "q={q} t={t}");
            }
        }
    }

    #[test]
    fn small_angle_needs_large_m() {
        // q = 101, t = 20: theta = acos(20 / (2 sqrt 101)) ~ 0.0993.
        let c = WeilClass::elliptic(101, 20, true).unwrap();
        let theta = (20f64 / (2.0 * 101f64.sqrt())).acos();
        let expect = (std::f64::consts::PI / (2.0 * theta)).ceil() as u64;
        assert_eq!(kinds(&c)[0].m(), Some(expect));
        let slow: Vec<_> = angle_indices_general(&c).unwrap().into_iter().map(|a| a.kind).collect();
        assert_eq!(slow[0].m(), Some(expect));
    }

    #[test]
    fn general_class_angles() {
        // h = y^2 - 2 over q = 2: theta = pi/3? no: cos(theta) = sqrt2/(2 sqrt2) = 1/2,
        // so theta = pi/3 (m = 2) and 2pi/3 (m = 1).
        let c = WeilClass::from_int_coeffs(2, &[1, 0, 2, 0, 4]).unwrap();
        let k = kinds(&c);
        assert_eq!(k, vec![AngleKind::Interior { m: 2 }, AngleKind::Interior { m: 1 }]);
    }

    #[test]
    fn exact_zero_of_cos_detected() {
        // theta = pi/4 over q = 2 has y = 2 sqrt2 cos(pi/4) = 2, and
        // cos(2 theta) = 0 exactly: m = 2 must come from the gcd test.
        let c = WeilClass::from_int_coeffs(2, &[1, 0, 0, 0, 4]).unwrap();
        let k = kinds(&c);
        assert_eq!(k, vec![AngleKind::Interior { m: 2 }, AngleKind::Interior { m: 1 }]);
    }

    #[test]
    fn same_angle_across_sources() {
        let e = WeilClass::elliptic(2, 1, true).unwrap();
        let g = WeilClass::from_int_coeffs(2, &[1, 0, 3, 0, 4]).unwrap();
        let a = angle_indices(&e).unwrap();
        let b = angle_indices(&g).unwrap();
        assert_eq!(b.iter().filter(|x| x.same_angle(&a[0])).count(), 1);
    }
}
