//! Brute-force traces of Frobenius: enumerate every Weierstrass equation
//! over a small field, keep the nonsingular ones, and count points.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::weil::prime_power;

/// Largest field the oracle accepts; tables are `q x q`.
pub const MAX_ORACLE_Q: u64 = 64;

/// `F_q` with elements `0..q` encoding polynomials over `F_p` in base `p`.
pub struct SmallField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

fn digits(x: usize, p: usize, a: usize) -> Vec<usize> {
    (0..a).map(|i| x / p.pow(i as u32) % p).collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &v| acc * p + v)
}

/// Product of two polynomials of degree `< a` reduced modulo a monic `f`
/// of degree `a` (given by its low coefficients).
fn poly_mul_mod(x: &[usize], y: &[usize], f_low: &[usize], p: usize) -> Vec<usize> {
    let a = f_low.len();
    let mut prod = vec![0usize; 2 * a];
    for (i, u) in x.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u * v) % p;
        }
    }
    // x^a = -f_low
    for k in (a..2 * a).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, fi) in f_low.iter().enumerate() {
            prod[k - a + i] = (prod[k - a + i] + p - c * fi % p) % p;
        }
    }
    prod.truncate(a);
    prod
}

/// Whether the monic polynomial `x^a + f_low` has no factor of degree
/// `1..=a/2`, by trial division over all monic candidates.
fn is_irreducible(f_low: &[usize], p: usize) -> bool {
    let a = f_low.len();
    let mut f: Vec<usize> = f_low.to_vec();
    f.push(1);
    for deg in 1..=a / 2 {
        for code in 0..p.pow(deg as u32) {
            let mut g = digits(code, p, deg);
            g.push(1);
            let mut r = f.clone();
            for k in (deg..r.len()).rev() {
                let c = r[k];
                if c == 0 {
                    continue;
                }
                for (i, gi) in g.iter().enumerate() {
                    r[k - deg + i] = (r[k - deg + i] + p - c * gi % p) % p;
                }
            }
            if r[..deg].iter().all(|&v| v == 0) {
                return false;
            }
        }
    }
    true
}

impl SmallField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, a) = prime_power(q)?;
        assert!(q <= MAX_ORACLE_Q, "oracle field too large");
        let (p, a, q) = (p as usize, a as usize, q as usize);
        let f_low = (0..p.pow(a as u32))
            .map(|code| digits(code, p, a))
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree");
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for x in 0..q {
            let dx = digits(x, p, a);
            for y in 0..q {
                let dy = digits(y, p, a);
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(u, v)| (u + v) % p).collect();
                add[x * q + y] = undigits(&s, p) as u8;
                mul[x * q + y] = undigits(&poly_mul_mod(&dx, &dy, &f_low, p), p) as u8;
            }
        }
        Ok(SmallField { q, add, mul })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, x: u8, y: u8) -> u8 {
        self.add[x as usize * self.q + y as usize]
    }

    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.q + y as usize]
    }

    pub fn neg(&self, x: u8) -> u8 {
        (0..self.q as u8).find(|&y| self.add(x, y) == 0).unwrap()
    }

    /// The image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> u8 {
        let mut acc = 0u8;
        for _ in 0..n.unsigned_abs() {
            acc = self.add(acc, 1);
        }
        if n < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }
}

/// Discriminant of `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
fn discriminant(k: &SmallField, [a1, a2, a3, a4, a6]: [u8; 5]) -> u8 {
    let c = |n| k.from_int(n);
    let m = |x, y| k.mul(x, y);
    let s = |x, y| k.add(x, y);
    let b2 = s(m(a1, a1), m(c(4), a2));
    let b4 = s(m(c(2), a4), m(a1, a3));
    let b6 = s(m(a3, a3), m(c(4), a6));
    let b8 = [m(m(a1, a1), a6), m(c(4), m(a2, a6)), k.neg(m(a1, m(a3, a4))), m(a2, m(a3, a3)), k.neg(m(a4, a4))]
        .into_iter()
        .fold(0, s);
    [k.neg(m(m(b2, b2), b8)), k.neg(m(c(8), m(b4, m(b4, b4)))), k.neg(m(c(27), m(b6, b6))), m(c(9), m(b2, m(b4, b6)))]
        .into_iter()
        .fold(0, s)
}

/// Points on the projective curve, the point at infinity included.
fn count_points(k: &SmallField, [a1, a2, a3, a4, a6]: [u8; 5]) -> u64 {
    let n = k.size() as u8;
    let mut count = 1;
    for x in 0..n {
        let x2 = k.mul(x, x);
        let rhs = [k.mul(x2, x), k.mul(a2, x2), k.mul(a4, x), a6].into_iter().fold(0, |u, v| k.add(u, v));
        for y in 0..n {
            let lhs = [k.mul(y, y), k.mul(a1, k.mul(x, y)), k.mul(a3, y)].into_iter().fold(0, |u, v| k.add(u, v));
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

/// Every trace `q + 1 - #E(F_q)` of an elliptic curve over `F_q`.
pub fn brute_force_traces(q: u64) -> Result<BTreeSet<i64>> {
    let k = SmallField::new(q)?;
    let n = q as u8;
    let mut traces = BTreeSet::new();
    for code in 0..(q as usize).pow(5) {
        let mut c = code;
        let mut a = [0u8; 5];
        for v in a.iter_mut() {
            *v = (c % n as usize) as u8;
            c /= n as usize;
        }
        if discriminant(&k, a) == 0 {
            continue;
        }
        traces.insert(q as i64 + 1 - count_points(&k, a) as i64);
    }
    Ok(traces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2u64, 3, 4, 8, 9] {
            let k = SmallField::new(q).unwrap();
            let n = q as u8;
            for x in 0..n {
                assert_eq!(k.mul(x, 1), x);
                assert_eq!(k.add(x, 0), x);
                if x != 0 {
                    assert!((0..n).any(|y| k.mul(x, y) == 1), "q={q}: {x} has no inverse");
                }
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
                        assert_eq!(k.mul(k.mul(x, y), z), k.mul(x, k.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn known_curves() {
        let k = SmallField::new(5).unwrap();
        // y^2 = x^3 + 1 over F_5 is supersingular: 6 points.
        assert_eq!(count_points(&k, [0, 0, 0, 0, 1]), 6);
        // y^2 = x^3 is singular.
        assert_eq!(discriminant(&k, [0, 0, 0, 0, 0]), 0);
        let k2 = SmallField::new(2).unwrap();
        // y^2 + y = x^3 over F_2: 3 points, trace 0.
        assert_eq!(count_points(&k2, [0, 0, 1, 0, 0]), 3);
        assert_ne!(discriminant(&k2, [0, 0, 1, 0, 0]), 0);
    }

    #[test]
    fn f2_traces() {
        let t: Vec<i64> = brute_force_traces(2).unwrap().into_iter().collect();
        assert_eq!(t, vec![-2, -1, 0, 1, 2]);
    }
}
