//! Dense univariate polynomials over Q, with Sturm chains and squarefree
//! decomposition.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::interval::RatInterval;
use super::quad::QuadValue;
use super::rational::{self, int, Rational};

/// Coefficients in increasing degree; never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(c: I) -> Self {
        Self::new(c.into_iter().map(int).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Self::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_quad(&self, x: &QuadValue) -> QuadValue {
        self.coeffs.iter().rev().fold(QuadValue::zero(), |acc, c| &(&acc * x) + &QuadValue::rational(c.clone()))
    }

    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        self.coeffs
            .iter()
            .rev()
            .fold(RatInterval::point(Rational::zero()), |acc, c| acc.mul(x).add(&RatInterval::point(c.clone())))
    }

    /// Yun's algorithm: returns `(factor, multiplicity)` pairs with pairwise
    /// coprime squarefree monic factors whose product (with multiplicities)
    /// is the monic part of `self`. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_chain(&self) -> SturmChain {
        let mut chain = vec![self.clone()];
        if self.degree().unwrap_or(0) > 0 {
            let mut a = self.clone();
            let mut b = self.derivative();
            while !b.is_zero() {
                let r = a.rem(&b).scale(&-Rational::one());
                chain.push(b.clone());
                a = b;
                b = r;
            }
        }
        SturmChain { chain }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sep = if c.is_negative() {
                " - "
            } else if first {
                ""
            } else {
                " + "
            };
            let sep = if first && c.is_negative() { "-" } else { sep };
            let mag = rational::to_string(&c.abs());
            let body = match (i, mag.as_str()) {
                (0, m) => m.to_string(),
                (1, "1") => "y".into(),
                (1, m) => format!("{m}*y"),
                (_, "1") => format!("y^{i}"),
                (_, m) => format!("{m}*y^{i}"),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

fn variations<I: IntoIterator<Item = i32>>(signs: I) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn variations_at(&self, x: &Rational) -> usize {
        variations(self.chain.iter().map(|p| rational::sign(&p.eval(x))))
    }

    pub fn variations_at_quad(&self, x: &QuadValue) -> usize {
        variations(self.chain.iter().map(|p| p.eval_quad(x).sign()))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| p.leading().map_or(0, rational::sign)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| {
            let s = p.leading().map_or(0, rational::sign);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Distinct roots in the open interval `(a, b)`, given that neither
    /// endpoint is a root.
    pub fn count_between(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}
