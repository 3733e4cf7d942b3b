//! Dense exact tableau simplex for `max c.x` subject to `A x <= b`, `x >= 0`.
//!
//! Bland's rule picks the entering and leaving variables, so degenerate
//! problems cannot cycle. Rows with negative right-hand side get an
//! artificial variable and a first phase that drives the artificials out.

use num_traits::{One, Signed, Zero};

use crate::exactnum::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal { value: Rational, primal: Vec<Rational>, dual: Vec<Rational> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// `rows x (cols + 1)`; the last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        if !p.is_one() {
            for x in self.t[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
        }
        let prow = std::mem::take(&mut self.t[r]);
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.t[r] = prow;
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for every column.
    fn reduced_costs(&self, obj: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = obj.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &obj[b];
            if cb.is_zero() {
                continue;
            }
            for (dj, a) in d.iter_mut().zip(&self.t[i]) {
                if !a.is_zero() {
                    *dj -= cb * a;
                }
            }
        }
        d
    }

    /// Maximize `obj` over the columns allowed by `usable`. Returns false
    /// when unbounded.
    fn optimize(&mut self, obj: &[Rational], usable: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let d = self.reduced_costs(obj);
            let Some(enter) = (0..self.cols).find(|&j| usable(j) && d[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Solve `max c.x` with `A x <= b`, `x >= 0`, exactly. The dual vector has
/// one entry per row and satisfies `y >= 0`, `y^T A >= c`, `y^T b = c.x*`.
pub(crate) fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Outcome {
    let m = b.len();
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let n_art = negative.len();
    // Columns: x (n), slacks (m), artificials (n_art).
    let cols = n + m + n_art;
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); cols + 1];
        let flip = b[i].is_negative();
        let sgn = if flip { -Rational::one() } else { Rational::one() };
        for j in 0..n {
            row[j] = &a[i][j] * &sgn;
        }
        row[n + i] = sgn.clone();
        row[cols] = &b[i] * &sgn;
        if flip {
            let k = negative.iter().position(|&x| x == i).unwrap();
            row[n + m + k] = Rational::one();
            basis.push(n + m + k);
        } else {
            basis.push(n + i);
        }
        t.push(row);
    }
    let mut tab = Tableau { t, basis, cols };

    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); cols];
        for k in 0..n_art {
            phase1[n + m + k] = -Rational::one();
        }
        tab.optimize(&phase1, &|_| true);
        let infeasibility: Rational = (0..m).filter(|&i| tab.basis[i] >= n + m).map(|i| tab.rhs(i).clone()).sum();
        if infeasibility.is_positive() {
            return Outcome::Infeasible;
        }
        // Drive remaining (zero-level) artificials out of the basis.
        for i in 0..m {
            if tab.basis[i] >= n + m {
                if let Some(j) = (0..n + m).find(|&j| !tab.t[i][j].is_zero()) {
                    tab.pivot(i, j);
                }
            }
        }
    }

    let mut obj = vec![Rational::zero(); cols];
    obj[..n].clone_from_slice(c);
    // Artificials never re-enter; a leftover basic artificial sits on a
    // redundant all-zero row and stays at level 0.
    if !tab.optimize(&obj, &|j| j < n + m) {
        return Outcome::Unbounded;
    }
    let mut primal = vec![Rational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            primal[bv] = tab.rhs(i).clone();
        }
    }
    let value: Rational = primal.iter().zip(c).map(|(x, c)| x * c).sum();
    let d = tab.reduced_costs(&obj);
    let dual: Vec<Rational> = (0..m).map(|i| -&d[n + i]).collect();
    Outcome::Optimal { value, primal, dual }
}
