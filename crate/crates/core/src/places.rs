//! Place counts by Möbius inversion, and the linear inequality system
//! saying that every place count of degree at most `D` is nonnegative.
//!
//! With `#C(F_{q^d}) = q^d + 1 - sum_j e_j p_j(d)`, the number of places of
//! degree `n` is
//!
//! ```text
//! N_n = (1/n) sum_{d | n} mu(n/d) #C(F_{q^d}) = b_n - sum_j c_{n,j} e_j
//! ```
//!
//! so `N_n >= 0` is the row `sum_j c_{n,j} e_j <= b_n`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::weil::{point_count_over, power_sums, DecompositionVector, WeilClass};

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `(1/n) sum_{d | n} mu(n/d) f(d)`.
pub fn mobius_average(n: u64, f: impl Fn(u64) -> BigInt) -> Rational {
    let mut s = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(n / d);
        if mu != 0 {
            s += f(d) * BigInt::from(mu);
        }
    }
    Rational::new(s, BigInt::from(n))
}

/// Place counts `N_1, ..., N_D` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceCounts {
    pub q: u64,
    pub values: Vec<Rational>,
}

/// `N_n` for `n = 1..=degree`; values may be negative. `q` is needed for
/// the empty decomposition and must match the classes otherwise.
pub fn place_counts(q: u64, dec: &DecompositionVector, degree: usize) -> Result<PlaceCounts> {
    if let Some(found) = dec.q() {
        if found != q {
            return Err(Error::InconsistentFieldSize { expected: q, found });
        }
    }
    let values: Vec<Rational> =
        (1..=degree as u64).map(|n| mobius_average(n, |d| point_count_over(q, dec, d as usize))).collect();
    // Gauss congruence makes every value integral for integer multiplicities.
    assert!(values.iter().all(rational::is_integer), "non-integral place count");
    Ok(PlaceCounts { q, values })
}

/// `A e <= b` with one row per place degree `n = 1..=D` (stored divided by
/// `n`) and one column per class; objective weights are the dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub q: u64,
    pub labels: Vec<String>,
    #[serde(rename = "D")]
    pub degree: usize,
    #[serde(rename = "A", with = "rational::serde_matrix")]
    pub a: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_vec")]
    pub b: Vec<Rational>,
    pub dims: Vec<u64>,
}

impl LinearSystem {
    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.dims.len()
    }

    /// The first `degree` rows.
    pub fn truncated(&self, degree: usize) -> LinearSystem {
        let k = degree.min(self.degree);
        LinearSystem {
            q: self.q,
            labels: self.labels.clone(),
            degree: k,
            a: self.a[..k].to_vec(),
            b: self.b[..k].to_vec(),
            dims: self.dims.clone(),
        }
    }

    /// Whether `e` satisfies every row.
    pub fn satisfied_by(&self, e: &[Rational]) -> bool {
        self.a.iter().zip(&self.b).all(|(row, b)| {
            let lhs: Rational = row.iter().zip(e).map(|(a, x)| a * x).sum();
            &lhs <= b
        })
    }

    pub fn satisfied_by_ints(&self, e: &[u64]) -> bool {
        let e: Vec<Rational> = e.iter().map(|x| rational::int(*x)).collect();
        self.satisfied_by(&e)
    }

    /// Structural checks for systems read from JSON.
    pub fn validate(&self) -> Result<()> {
        let s = self.dims.len();
        if self.labels.len() != s {
            return Err(Error::Invalid("labels and dims differ in length".into()));
        }
        if self.a.len() != self.b.len() || self.a.len() != self.degree {
            return Err(Error::Invalid("row count does not match D".into()));
        }
        if self.a.iter().any(|r| r.len() != s) {
            return Err(Error::Invalid("ragged coefficient matrix".into()));
        }
        Ok(())
    }
}

/// Build the place-count system for `classes` over `F_q` up to degree `D`.
pub fn inequality_system(q: u64, classes: &[WeilClass], degree: usize) -> Result<LinearSystem> {
    if let Some(bad) = classes.iter().find(|c| c.q() != q) {
        return Err(Error::InconsistentFieldSize { expected: q, found: bad.q() });
    }
    let sums: Vec<_> = classes.iter().map(|c| power_sums(c, degree)).collect();
    let qb = BigInt::from(q);
    let mut a = Vec::with_capacity(degree);
    let mut b = Vec::with_capacity(degree);
    for n in 1..=degree as u64 {
        let row: Vec<Rational> = sums.iter().map(|ps| mobius_average(n, |d| ps.get(d as usize).clone())).collect();
        b.push(mobius_average(n, |d| num_traits::pow(qb.clone(), d as usize) + 1));
        a.push(row);
    }
    Ok(LinearSystem {
        q,
        labels: classes.iter().map(|c| c.label()).collect(),
        degree,
        a,
        b,
        dims: classes.iter().map(|c| c.dim() as u64).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;
    use crate::weil::elliptic_classes;
    use proptest::prelude::*;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
    }

    #[test]
    fn projective_line() {
        let dec = DecompositionVector::new(vec![], vec![]).unwrap();
        let pc = place_counts(2, &dec, 3).unwrap();
        assert_eq!(pc.values, row(&[3, 1, 2]));
    }

    #[test]
    fn curve_places() {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let dec = DecompositionVector::new(classes, vec![4, 7, 5, 3, 7]).unwrap();
        assert_eq!(place_counts(2, &dec, 1).unwrap().values, row(&[1]));
        let one = elliptic_classes(2, &[1], true).unwrap();
        let dec = DecompositionVector::new(one, vec![1]).unwrap();
        assert_eq!(place_counts(2, &dec, 2).unwrap().values, row(&[2, 3]));
    }

    #[test]
    fn table_for_f2() {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let sys = inequality_system(2, &classes, 8).unwrap();
        let expect = [
            [-2, -1, 0, 1, 2],
            [1, -1, -2, -2, -1],
            [2, 2, 0, -2, -2],
            [-2, 1, 3, 1, -2],
            [2, -2, 0, 2, -2],
            [-1, 1, -2, 3, 1],
            [-2, 2, 0, -2, 2],
            [5, -4, 3, -4, 5],
        ];
        for (got, want) in sys.a.iter().zip(expect) {
            assert_eq!(got, &row(&want));
        }
        assert_eq!(sys.b, row(&[3, 1, 2, 3, 6, 9, 18, 30]));
        assert_eq!(sys.dims, vec![1; 5]);
        let one = inequality_system(2, &classes, 1).unwrap();
        assert_eq!(one.a, vec![row(&[-2, -1, 0, 1, 2])]);
        assert_eq!(one.b, row(&[3]));
    }

    #[test]
    fn empty_class_list() {
        let sys = inequality_system(2, &[], 2).unwrap();
        assert_eq!(sys.a, vec![Vec::<Rational>::new(), vec![]]);
        assert_eq!(sys.b, row(&[3, 1]));
        assert!(sys.satisfied_by(&[]));
    }

    #[test]
    fn mixed_fields_rejected() {
        let mut classes = elliptic_classes(2, &[1], true).unwrap();
        classes.extend(elliptic_classes(3, &[1], true).unwrap());
        assert_eq!(inequality_system(2, &classes, 3), Err(Error::InconsistentFieldSize { expected: 2, found: 3 }));
    }

    #[test]
    fn balanced_supersingular_vectors_pass_first_seven_rows() {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let sys = inequality_system(2, &classes, 8).unwrap();
        let first7 = sys.truncated(7);
        for g in (0..=200).step_by(2) {
            let e = [g / 2, 0, 0, 0, g / 2];
            assert!(first7.satisfied_by_ints(&e));
            if g > 26 {
                assert!(!sys.satisfied_by_ints(&e));
            }
        }
    }

    #[test]
    fn json_shape() {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let sys = inequality_system(2, &classes, 8).unwrap();
        let v: serde_json::Value = serde_json::to_value(&sys).unwrap();
        assert_eq!(v["D"], 8);
        assert_eq!(v["labels"][0], "t=-2");
        assert_eq!(v["A"][7][0], "5");
        assert_eq!(v["b"][7], "30");
        let back: LinearSystem = serde_json::from_value(v).unwrap();
        assert_eq!(back, sys);
        // plain integers are accepted on input
        let raw = r#"{"q":2,"labels":["t=1"],"D":1,"A":[[1]],"b":[3],"dims":[1]}"#;
        let s: LinearSystem = serde_json::from_str(raw).unwrap();
        assert_eq!(s.a[0][0], int(1));
        s.validate().unwrap();
    }

    fn arb_decomposition() -> impl Strategy<Value = (u64, Vec<i64>, Vec<u64>)> {
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]).prop_flat_map(|q| {
            let traces = crate::weil::admissible_elliptic_traces(q).unwrap();
            let n = traces.len();
            (Just(q), Just(traces), prop::collection::vec(0u64..20, n))
        })
    }

    proptest! {
        #[test]
        fn mobius_round_trip((q, traces, e) in arb_decomposition()) {
            let classes = elliptic_classes(q, &traces, true).unwrap();
            let dec = DecompositionVector::new(classes.clone(), e.clone()).unwrap();
            let pc = place_counts(q, &dec, 12).unwrap();
            for n in 1..=12u64 {
                let s: Rational = divisors(n).iter().map(|d| int(*d) * &pc.values[*d as usize - 1]).sum();
                prop_assert_eq!(s, Rational::from_integer(point_count_over(q, &dec, n as usize)));
            }
            // Rows reproduce the place counts: N_n = b_n - (A e)_n.
            let sys = inequality_system(q, &classes, 12).unwrap();
            for n in 0..12 {
                let ae: Rational = sys.a[n].iter().zip(&e).map(|(a, x)| a * int(*x)).sum();
                prop_assert_eq!(&sys.b[n] - ae, pc.values[n].clone());
            }
            prop_assert!(sys.a.iter().flatten().all(rational::is_integer));
        }
    }
}
