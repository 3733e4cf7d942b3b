//! Real Weil polynomial and exact isolation of its roots.
//!
//! Under `y = x + q/x` a Weil polynomial of degree `2d` becomes a degree-`d`
//! polynomial `h` whose roots are `2 sqrt(q) cos(theta_j)`. Roots at
//! `+-2 sqrt(q)` (angles 0 and pi) are split off exactly; the rest are
//! isolated by Sturm sequences and bisection over Q.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::WeilClass;
use crate::error::{Error, Result};
use crate::exactnum::interval::{quad_interval, RatInterval};
use crate::exactnum::rational::{self, int, Rational};
use crate::exactnum::{QuadValue, RatPoly};

/// `V_k(y) = x^k + (q/x)^k` expressed in `y = x + q/x`:
/// `V_0 = 2`, `V_1 = y`, `V_k = y V_(k-1) - q V_(k-2)`.
pub fn v_polynomial(q: u64, k: usize) -> RatPoly {
    let mut prev = RatPoly::constant(int(2));
    if k == 0 {
        return prev;
    }
    let mut cur = RatPoly::x();
    let qr = int(q);
    for _ in 1..k {
        let next = cur.mul(&RatPoly::x()).sub(&prev.scale(&qr));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `h(y)` with `P(x) = x^d h(x + q/x)`.
pub fn real_weil_polynomial(c: &WeilClass) -> RatPoly {
    let d = c.dim();
    let coeffs = c.coeffs();
    let mut h = RatPoly::constant(Rational::from_integer(coeffs[d].clone()));
    for k in 1..=d {
        let ck = Rational::from_integer(coeffs[d - k].clone());
        h = h.add(&v_polynomial(c.q(), k).scale(&ck));
    }
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootPosition {
    /// `y = 2 sqrt(q)`, angle 0.
    Top,
    /// `y = -2 sqrt(q)`, angle pi.
    Bottom,
    Interior,
}

/// One distinct real root of `h`, isolated by `interval`, a root of the
/// squarefree `factor` and of no other factor of `h`.
///
/// Interior intervals are either a single rational point (an exact root)
/// or an interval whose endpoints are not roots of `factor` and which
/// contains exactly one root of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    q: u64,
    factor: RatPoly,
    interval: RatInterval,
    multiplicity: usize,
    position: RootPosition,
}

impl RealRoot {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn factor(&self) -> &RatPoly {
        &self.factor
    }

    pub fn interval(&self) -> &RatInterval {
        &self.interval
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn position(&self) -> RootPosition {
        self.position
    }

    /// Exact value when it is rational or `+-2 sqrt(q)`.
    pub fn exact_value(&self) -> Option<QuadValue> {
        match self.position {
            RootPosition::Top => Some(QuadValue::sqrt_of(self.q).scale(&int(2))),
            RootPosition::Bottom => Some(QuadValue::sqrt_of(self.q).scale(&int(-2))),
            RootPosition::Interior => {
                let iv = &self.interval;
                (iv.lo() == iv.hi()).then(|| QuadValue::rational(iv.lo().clone()))
            }
        }
    }

    /// Halve the isolating interval, keeping the root inside.
    fn bisect(&mut self) {
        if self.interval.lo() == self.interval.hi() {
            return;
        }
        let lo = self.interval.lo().clone();
        let hi = self.interval.hi().clone();
        let mid = self.interval.midpoint();
        let s_mid = rational::sign(&self.factor.eval(&mid));
        self.interval = if s_mid == 0 {
            RatInterval::point(mid)
        } else if s_mid == rational::sign(&self.factor.eval(&lo)) {
            RatInterval::new(mid, hi).unwrap()
        } else {
            RatInterval::new(lo, mid).unwrap()
        };
    }

    /// Exact sign of `p` at this root.
    pub fn sign_of(&self, p: &RatPoly) -> i32 {
        if let Some(v) = self.exact_value() {
            return p.eval_quad(&v).sign();
        }
        let g = self.factor.gcd(p);
        if g.degree().unwrap_or(0) > 0 && self.interval_holds_root_of(&g) {
            return 0;
        }
        // p does not vanish at the root: shrink until p keeps one sign.
        let mut r = self.clone();
        loop {
            let iv = r.interval.clone();
            if iv.lo() == iv.hi() {
                return rational::sign(&p.eval(iv.lo()));
            }
            let sl = rational::sign(&p.eval(iv.lo()));
            let sh = rational::sign(&p.eval(iv.hi()));
            if sl != 0 && sl == sh && p.sturm_chain().count_between(iv.lo(), iv.hi()) == 0 {
                return sl;
            }
            r.bisect();
        }
    }

    /// Whether a polynomial dividing `factor` vanishes at this root.
    fn interval_holds_root_of(&self, g: &RatPoly) -> bool {
        let iv = &self.interval;
        if rational::sign(&g.eval(iv.lo())) == 0 || rational::sign(&g.eval(iv.hi())) == 0 {
            return true;
        }
        // `g | factor`, so endpoints that are not roots of factor are not
        // roots of g either.
        g.sturm_chain().count_between(iv.lo(), iv.hi()) > 0
    }

    /// Enclosure of `p(root)` with width below `2^-bits`.
    pub fn enclose(&self, p: &RatPoly, bits: u32) -> RatInterval {
        if let Some(v) = self.exact_value() {
            let e = p.eval_quad(&v);
            return quad_interval(&e, bits);
        }
        let tol = Rational::new(BigInt::one(), BigInt::one() << bits);
        let mut r = self.clone();
        loop {
            let iv = p.eval_interval(&r.interval);
            if iv.width() <= tol {
                return iv;
            }
            r.bisect();
        }
    }

    /// Whether two roots (possibly of different polynomials) coincide.
    pub fn same_root(&self, other: &RealRoot) -> bool {
        if self.q != other.q {
            return false;
        }
        match (self.position, other.position) {
            (RootPosition::Top, RootPosition::Top) | (RootPosition::Bottom, RootPosition::Bottom) => return true,
            (RootPosition::Interior, RootPosition::Interior) => {}
            _ => return false,
        }
        let Some(common) = self.interval.intersect(&other.interval) else {
            return false;
        };
        let g = self.factor.gcd(&other.factor);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        // A root of g in the common interval is the unique root of both
        // factors there.
        if rational::sign(&g.eval(common.lo())) == 0 || rational::sign(&g.eval(common.hi())) == 0 {
            return true;
        }
        g.sturm_chain().count_between(common.lo(), common.hi()) > 0
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidWeilPolynomial(msg.into())
}

/// Whether rational `x` is strictly below `2 sqrt(q)` / strictly above
/// `-2 sqrt(q)`.
fn below_top(x: &Rational, q: u64) -> bool {
    x.is_negative() || x * x < int(4 * q)
}

fn above_bottom(x: &Rational, q: u64) -> bool {
    x.is_positive() || x * x < int(4 * q)
}

/// Isolate the distinct real roots of the real Weil polynomial, ascending.
/// Multiplicities come from the squarefree decomposition; their sum is `d`.
pub fn isolate_real_roots(c: &WeilClass) -> Result<Vec<RealRoot>> {
    let q = c.q();
    let h = real_weil_polynomial(c);
    let square_root = {
        let r = q.sqrt();
        (r * r == q).then_some(r as i64)
    };
    let top = QuadValue::sqrt_of(q).scale(&int(2));
    let bottom = -&top;
    let bound = int((4 * q).sqrt() as i64 + if square_root.is_some() { 0 } else { 1 });

    let mut roots = Vec::new();
    for (factor, mult) in h.squarefree_decomposition() {
        let mut f = factor;
        // Split off the endpoint roots exactly.
        let endpoint = match square_root {
            Some(r) => vec![RatPoly::from_ints([-2 * r, 1]), RatPoly::from_ints([2 * r, 1])],
            None => vec![RatPoly::new(vec![int(-4 * q as i64), Rational::zero(), Rational::one()])],
        };
        for e in endpoint {
            let g = f.gcd(&e);
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            f = f.div_rem(&g).0;
            let mk = |pos| RealRoot {
                q,
                factor: g.clone(),
                interval: RatInterval::point(Rational::zero()),
                multiplicity: mult,
                position: pos,
            };
            if g.eval_quad(&top).is_zero() {
                roots.push(mk(RootPosition::Top));
            }
            if g.eval_quad(&bottom).is_zero() {
                roots.push(mk(RootPosition::Bottom));
            }
        }
        let n = f.degree().unwrap_or(0);
        if n == 0 {
            continue;
        }
        let sturm = f.sturm_chain();
        if sturm.real_root_count() != n {
            return Err(invalid(format!("real Weil polynomial {h} has a non-real root")));
        }
        let inside = sturm.variations_at_quad(&bottom) - sturm.variations_at_quad(&top);
        if inside != n {
            return Err(invalid(format!("real Weil polynomial {h} has a root outside [-2 sqrt({q}), 2 sqrt({q})]")));
        }
        // Bisection on (-bound, bound); endpoints are never roots.
        let mut stack = vec![(-bound.clone(), bound.clone())];
        let mut found = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            let count = sturm.count_between(&lo, &hi);
            if count == 0 {
                continue;
            }
            if count == 1 {
                found.push(RatInterval::new(lo, hi).unwrap());
                continue;
            }
            let mut mid = (&lo + &hi) / int(2);
            let mut k = 3;
            while f.eval(&mid).is_zero() {
                // Exact root at the midpoint: nudge the split point.
                mid = &lo + (&hi - &lo) / int(k);
                k += 1;
            }
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        for iv in found {
            let mut r =
                RealRoot { q, factor: f.clone(), interval: iv, multiplicity: mult, position: RootPosition::Interior };
            while !(below_top(r.interval.hi(), q) && above_bottom(r.interval.lo(), q)) {
                r.bisect();
            }
            // h is monic with integer coefficients, so rational roots are
            // integers; pin them down exactly.
            while r.interval.width() >= Rational::one() {
                r.bisect();
            }
            let n = rational::ceil(r.interval.lo());
            if Rational::from_integer(n.clone()) <= *r.interval.hi()
                && f.eval(&Rational::from_integer(n.clone())).is_zero()
            {
                r.interval = RatInterval::point(Rational::from_integer(n));
            }
            roots.push(r);
        }
    }

    // Enclose +-2 sqrt(q) tightly enough to be disjoint from interior roots.
    let inner_max = roots
        .iter()
        .filter(|r| r.position == RootPosition::Interior)
        .map(|r| r.interval.hi().abs().max(r.interval.lo().abs()))
        .max();
    for r in roots.iter_mut() {
        let v = match r.position {
            RootPosition::Top => &top,
            RootPosition::Bottom => &bottom,
            RootPosition::Interior => continue,
        };
        let mut bits = 16;
        loop {
            let iv = quad_interval(v, bits);
            let clear = match &inner_max {
                None => true,
                Some(m) => iv.lo().abs().min(iv.hi().abs()) > *m,
            };
            if clear {
                r.interval = iv;
                break;
            }
            bits *= 2;
        }
    }

    roots.sort_by(|a, b| a.interval.lo().cmp(b.interval.lo()));
    debug_assert_eq!(roots.iter().map(|r| r.multiplicity).sum::<usize>(), c.dim());
    Ok(roots)
}
