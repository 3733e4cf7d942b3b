//! Depth-first branch-and-bound on the LP relaxation.

use num_bigint::BigInt;
use num_traits::Zero;

use super::simplex::{self, Outcome};
use super::{lp_maximize, objective, LPResult, LpStatus};
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::places::LinearSystem;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IlpStats {
    pub nodes: u64,
    pub pruned: u64,
}

#[derive(Clone)]
struct Node {
    lower: Vec<BigInt>,
    upper: Vec<Option<BigInt>>,
}

/// The relaxation at a node, with `x = lower + x'` and upper bounds as rows.
fn relax(sys: &LinearSystem, c: &[Rational], node: &Node) -> Outcome {
    let n = sys.cols();
    if (0..n).any(|j| node.upper[j].as_ref().is_some_and(|u| *u < node.lower[j])) {
        return Outcome::Infeasible;
    }
    let lower: Vec<Rational> = node.lower.iter().map(|l| Rational::from_integer(l.clone())).collect();
    let mut a = sys.a.clone();
    let mut b: Vec<Rational> = sys
        .a
        .iter()
        .zip(&sys.b)
        .map(|(row, bi)| bi - row.iter().zip(&lower).map(|(x, l)| x * l).sum::<Rational>())
        .collect();
    for j in 0..n {
        if let Some(u) = &node.upper[j] {
            let mut row = vec![Rational::zero(); n];
            row[j] = Rational::from_integer(BigInt::from(1));
            a.push(row);
            b.push(Rational::from_integer(u - &node.lower[j]));
        }
    }
    match simplex::maximize(&a, &b, c) {
        Outcome::Optimal { value, primal, dual } => {
            let shift: Rational = c.iter().zip(&lower).map(|(c, l)| c * l).sum();
            let primal = primal.iter().zip(&lower).map(|(x, l)| x + l).collect();
            Outcome::Optimal { value: value + shift, primal, dual }
        }
        other => other,
    }
}

/// Exact maximum of `sum dim_j e_j` over nonnegative integer `e` with
/// `A e <= b`.
pub fn ilp_maximize(sys: &LinearSystem) -> Result<LPResult> {
    ilp_maximize_with_stats(sys).map(|(r, _)| r)
}

pub fn ilp_maximize_with_stats(sys: &LinearSystem) -> Result<(LPResult, IlpStats)> {
    let root = lp_maximize(sys);
    match root.status {
        LpStatus::Unbounded => return Err(Error::Unbounded),
        LpStatus::Infeasible => return Ok((root, IlpStats::default())),
        LpStatus::Optimal => {}
    }
    let n = sys.cols();
    let c = objective(sys);
    let mut stats = IlpStats::default();
    let mut best: Option<(BigInt, Vec<Rational>)> = None;
    let mut stack = vec![Node { lower: vec![BigInt::zero(); n], upper: vec![None; n] }];
    while let Some(node) = stack.pop() {
        stats.nodes += 1;
        let (value, primal) = match relax(sys, &c, &node) {
            Outcome::Optimal { value, primal, .. } => (value, primal),
            Outcome::Infeasible => continue,
            // Bounded at the root, so bounded on every subproblem.
            Outcome::Unbounded => unreachable!("subproblem of a bounded LP is unbounded"),
        };
        let bound = rational::floor(&value);
        if best.as_ref().is_some_and(|(b, _)| bound <= *b) {
            stats.pruned += 1;
            continue;
        }
        match primal.iter().position(|x| !rational::is_integer(x)) {
            None => best = Some((value.to_integer(), primal)),
            Some(j) => {
                let f = rational::floor(&primal[j]);
                let mut up = node.clone();
                up.lower[j] = &f + 1;
                let mut down = node;
                down.upper[j] = Some(f);
                // Floor branch is explored first.
                stack.push(up);
                stack.push(down);
            }
        }
    }
    let (value, primal) = best.expect("the zero vector is feasible when the relaxation is");
    let result =
        LPResult { status: LpStatus::Optimal, value: Some(Rational::from_integer(value)), primal, dual: vec![] };
    Ok((result, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;
    use crate::places::inequality_system;
    use crate::weil::elliptic_classes;

    #[test]
    fn f2_ilp_is_attained() {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let sys = inequality_system(2, &classes, 8).unwrap();
        let r = ilp_maximize(&sys).unwrap();
        assert_eq!(r.value, Some(int(26)));
        assert!(r.primal.iter().all(rational::is_integer));
        assert!(sys.satisfied_by(&r.primal));
        assert_eq!(ilp_maximize(&sys.truncated(7)), Err(Error::Unbounded));
    }

    #[test]
    fn integer_gap() {
        // max x + y, 2x + 2y <= 3: LP 3/2, ILP 1
        let sys = LinearSystem {
            q: 2,
            labels: vec!["x".into(), "y".into()],
            degree: 1,
            a: vec![vec![int(2), int(2)]],
            b: vec![int(3)],
            dims: vec![1, 1],
        };
        assert_eq!(lp_maximize(&sys).value, Some(Rational::new(3.into(), 2.into())));
        assert_eq!(ilp_maximize(&sys).unwrap().value, Some(int(1)));
    }

    #[test]
    fn weighted_objective() {
        // max 2x + y, 3x + y <= 7, x - y <= 1
        let sys = LinearSystem {
            q: 2,
            labels: vec!["x".into(), "y".into()],
            degree: 2,
            a: vec![vec![int(3), int(1)], vec![int(1), int(-1)]],
            b: vec![int(7), int(1)],
            dims: vec![2, 1],
        };
        let r = ilp_maximize(&sys).unwrap();
        // brute force
        let mut best = 0;
        for x in 0..10i64 {
            for y in 0..10i64 {
                if 3 * x + y <= 7 && x - y <= 1 {
                    best = best.max(2 * x + y);
                }
            }
        }
        assert_eq!(r.value, Some(int(best)));
    }
}
