//! All nonnegative integer vectors of a given weighted genus satisfying a
//! place-count system, by depth-first search with partial-row pruning.

use num_traits::Zero;

use crate::error::Result;
use crate::exactnum::rational::{int, Rational};
use crate::places::LinearSystem;
use crate::weil::{DecompositionVector, WeilClass};

struct Search<'a> {
    sys: &'a LinearSystem,
    /// `suffix_min[j][i] = min_{k >= j} a_ik / dim_k`.
    suffix_min: Vec<Vec<Rational>>,
}

impl<'a> Search<'a> {
    fn new(sys: &'a LinearSystem) -> Self {
        let n = sys.cols();
        let mut suffix_min: Vec<Vec<Rational>> = vec![Vec::new(); n + 1];
        for j in (0..n).rev() {
            suffix_min[j] = (0..sys.rows())
                .map(|i| {
                    let here = &sys.a[i][j] / int(sys.dims[j]);
                    match suffix_min[j + 1].get(i) {
                        Some(m) if *m < here => m.clone(),
                        _ => here,
                    }
                })
                .collect();
        }
        Search { sys, suffix_min }
    }

    /// Whether some completion of the prefix with remaining genus `rem` on
    /// variables `j..` could still satisfy every row.
    fn viable(&self, partial: &[Rational], j: usize, rem: u64) -> bool {
        if j == self.sys.cols() {
            return partial.iter().zip(&self.sys.b).all(|(p, b)| p <= b);
        }
        let r = int(rem);
        partial.iter().zip(&self.sys.b).zip(&self.suffix_min[j]).all(|((p, b), m)| p + &r * m <= *b)
    }

    fn run(&self, j: usize, rem: u64, e: &mut Vec<u64>, partial: &mut Vec<Rational>, out: &mut Vec<Vec<u64>>) {
        if !self.viable(partial, j, rem) {
            return;
        }
        let n = self.sys.cols();
        if j == n {
            if rem == 0 {
                out.push(e.clone());
            }
            return;
        }
        let dim = self.sys.dims[j];
        if j + 1 == n {
            if rem.is_multiple_of(dim) {
                self.step(j, rem / dim, rem, e, partial, out);
            }
            return;
        }
        for v in 0..=rem / dim {
            self.step(j, v, rem, e, partial, out);
        }
    }

    fn step(&self, j: usize, v: u64, rem: u64, e: &mut Vec<u64>, partial: &mut Vec<Rational>, out: &mut Vec<Vec<u64>>) {
        let vr = int(v);
        let saved = partial.clone();
        for (p, row) in partial.iter_mut().zip(&self.sys.a) {
            *p += &row[j] * &vr;
        }
        e.push(v);
        self.run(j + 1, rem - v * self.sys.dims[j], e, partial, out);
        e.pop();
        *partial = saved;
    }
}

/// Vectors `e >= 0` with `sum dim_j e_j = g` and `A e <= b`, in
/// lexicographic order.
pub fn enumerate_vectors(sys: &LinearSystem, g: u64) -> Vec<Vec<u64>> {
    enumerate_vectors_parallel(sys, g, 1)
}

/// As [`enumerate_vectors`], splitting the first variable's range across
/// `jobs` threads. The output does not depend on `jobs`.
pub fn enumerate_vectors_parallel(sys: &LinearSystem, g: u64, jobs: usize) -> Vec<Vec<u64>> {
    let search = Search::new(sys);
    let zero = vec![Rational::zero(); sys.rows()];
    if sys.cols() <= 1 || jobs <= 1 {
        let mut out = Vec::new();
        search.run(0, g, &mut Vec::new(), &mut zero.clone(), &mut out);
        return out;
    }
    let firsts: Vec<u64> = (0..=g / sys.dims[0]).collect();
    let chunk = firsts.len().div_ceil(jobs).max(1);
    let mut out: Vec<Vec<u64>> = std::thread::scope(|s| {
        let handles: Vec<_> = firsts
            .chunks(chunk)
            .map(|vs| {
                let search = &search;
                let zero = zero.clone();
                s.spawn(move || {
                    let mut out = Vec::new();
                    for &v in vs {
                        let mut partial = zero.clone();
                        search.step(0, v, g, &mut Vec::new(), &mut partial, &mut out);
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("enumeration worker panicked")).collect()
    });
    out.sort();
    out
}

/// Feasible decompositions over `classes` of genus `g`.
pub fn enumerate_decompositions(
    classes: &[WeilClass],
    sys: &LinearSystem,
    g: u64,
    jobs: usize,
) -> Result<Vec<DecompositionVector>> {
    enumerate_vectors_parallel(sys, g, jobs)
        .into_iter()
        .map(|e| DecompositionVector::new(classes.to_vec(), e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::places::inequality_system;
    use crate::weil::elliptic_classes;

    fn f2() -> (Vec<WeilClass>, LinearSystem) {
        let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
        let sys = inequality_system(2, &classes, 8).unwrap();
        (classes, sys)
    }

    /// Every composition of `g` with the given weights, unpruned.
    fn brute(sys: &LinearSystem, g: u64) -> Vec<Vec<u64>> {
        fn rec(dims: &[u64], rem: u64, e: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if dims.is_empty() {
                if rem == 0 {
                    out.push(e.clone());
                }
                return;
            }
            for v in 0..=rem / dims[0] {
                e.push(v);
                rec(&dims[1..], rem - v * dims[0], e, out);
                e.pop();
            }
        }
        let mut all = Vec::new();
        rec(&sys.dims, g, &mut Vec::new(), &mut all);
        all.into_iter().filter(|e| sys.satisfied_by_ints(e)).collect()
    }

    #[test]
    fn genus_26() {
        let (classes, sys) = f2();
        let found = enumerate_vectors(&sys, 26);
        assert_eq!(found, vec![vec![4, 7, 5, 3, 7], vec![5, 6, 5, 4, 6], vec![6, 5, 5, 5, 5]]);
        assert!(enumerate_vectors(&sys, 27).is_empty());
        assert_eq!(enumerate_vectors(&sys, 0), vec![vec![0; 5]]);
        let decs = enumerate_decompositions(&classes, &sys, 26, 3).unwrap();
        assert_eq!(decs[0].display_product(), "E_{-2}^4 × E_{-1}^7 × E_{0}^5 × E_{1}^3 × E_{2}^7");
    }

    #[test]
    fn parallel_matches_serial() {
        let (_, sys) = f2();
        for g in [0, 5, 12, 20, 26] {
            let serial = enumerate_vectors(&sys, g);
            for jobs in [2, 3, 8] {
                assert_eq!(enumerate_vectors_parallel(&sys, g, jobs), serial);
            }
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let (_, sys) = f2();
        for d in [3, 5, 8] {
            let s = sys.truncated(d);
            for g in 0..=10 {
                assert_eq!(enumerate_vectors(&s, g), brute(&s, g), "D={d} g={g}");
            }
        }
        let classes = elliptic_classes(3, &[-3, -1, 0, 2], true).unwrap();
        let s3 = inequality_system(3, &classes, 6).unwrap();
        for g in 0..=10 {
            assert_eq!(enumerate_vectors(&s3, g), brute(&s3, g));
        }
    }

    #[test]
    fn weighted_dims() {
        let e = elliptic_classes(2, &[1], true).unwrap();
        let two = WeilClass::product(&[e[0].clone(), e[0].clone()]).unwrap();
        let classes = vec![e[0].clone(), two];
        let sys = inequality_system(2, &classes, 6).unwrap();
        for g in 0..=8 {
            assert_eq!(enumerate_vectors(&sys, g), brute(&sys, g));
        }
        let single = inequality_system(2, &e, 3).unwrap();
        assert_eq!(enumerate_vectors(&single, 1), vec![vec![1]]);
    }
}
