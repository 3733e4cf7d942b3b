//! Genus bounds from a finite set of Frobenius angles: the closed forms
//! `B1` and `B2`, the explicit-formula bound `(T(sqrt q) + T(1/sqrt q))/2`
//! for a trigonometric polynomial `T`, and the corollary formulas.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::enclosure::DEFAULT_BITS;
use crate::exactnum::interval::{cos_pi_exact, cos_pi_interval, ln_interval, quad_interval, sqrt_interval};
use crate::exactnum::rational::{self, int, rat, Rational};
use crate::exactnum::{ln_upper, Enclosure, QuadValue, RatInterval, RatPoly};
use crate::weil::{
    angle_indices, elliptic_classes, elliptic_power_sums, v_polynomial, AngleIndex, AngleKind, AngleSource, WeilClass,
};

/// Precision ceiling for interval verification of custom `T`.
pub const MAX_VERIFY_BITS: u32 = 1024;

/// Bits used for the rigorous upper bounds on logarithms and roots.
const FORMULA_BITS: u32 = 64;

/// One nonnegative angle of an [`AngleSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Angle {
    /// An angle coming from a Weil class.
    Class(AngleIndex),
    /// `theta = r * pi` with rational `r` in `[0, 1]`.
    PiMultiple { r: Rational, kind: AngleKind },
}

impl Angle {
    pub fn kind(&self) -> AngleKind {
        match self {
            Angle::Class(a) => a.kind,
            Angle::PiMultiple { kind, .. } => *kind,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Angle::Class(a) => match &a.source {
                AngleSource::Trace { t, .. } => format!("angle of t={t}"),
                AngleSource::Root(_) => a.label(),
            },
            Angle::PiMultiple { r, .. } => format!("{}*pi", rational::to_string(r)),
        }
    }
}

/// A set of distinct nonnegative Frobenius angles over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleSet {
    q: u64,
    angles: Vec<Angle>,
}

impl AngleSet {
    /// Angles of the given classes, with coincident angles merged.
    pub fn from_classes(q: u64, classes: &[WeilClass]) -> Result<Self> {
        crate::weil::prime_power(q)?;
        let mut merged: Vec<AngleIndex> = Vec::new();
        for c in classes {
            if c.q() != q {
                return Err(Error::InconsistentFieldSize { expected: q, found: c.q() });
            }
            for a in angle_indices(c)? {
                if !merged.iter().any(|b| b.same_angle(&a)) {
                    merged.push(a);
                }
            }
        }
        Ok(AngleSet { q, angles: merged.into_iter().map(Angle::Class).collect() })
    }

    /// Angles of elliptic classes with the given traces.
    pub fn from_traces(q: u64, traces: &[i64], enforce_admissible: bool) -> Result<Self> {
        Self::from_classes(q, &elliptic_classes(q, traces, enforce_admissible)?)
    }

    /// Angles `r * pi` for rationals `r` in `[0, 1]`; duplicates are merged.
    pub fn from_pi_multiples(q: u64, rs: &[Rational]) -> Result<Self> {
        crate::weil::prime_power(q)?;
        let mut angles: Vec<Angle> = Vec::new();
        for r in rs {
            if r.is_negative() || *r > Rational::one() {
                return Err(Error::Invalid(format!("angle {}*pi is outside [0, pi]", rational::to_string(r))));
            }
            if angles.iter().any(|a| matches!(a, Angle::PiMultiple { r: s, .. } if s == r)) {
                continue;
            }
            let kind = if r.is_zero() {
                AngleKind::Zero
            } else if r.is_one() {
                AngleKind::Pi
            } else {
                // least k with k r >= 1/2
                let m = rational::ceil(&(Rational::one() / (r * int(2))));
                AngleKind::Interior { m: m.try_into().map_err(|_| Error::AngleSearchLimit(u64::MAX))? }
            };
            angles.push(Angle::PiMultiple { r: r.clone(), kind });
        }
        Ok(AngleSet { q, angles })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    /// Number of distinct angles, `0` and `pi` included.
    pub fn s(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    fn is_zero_only(&self) -> bool {
        self.angles.len() == 1 && self.angles[0].kind() == AngleKind::Zero
    }
}

/// `r = #(S ∩ {pi}) + 2 sum m(theta)`, with `r = 1/2` for `S = {0}`.
pub fn angle_bound_r(set: &AngleSet) -> Rational {
    if set.is_zero_only() {
        return rat(1, 2);
    }
    let mut r = BigInt::zero();
    for a in set.angles() {
        match a.kind() {
            AngleKind::Zero => {}
            AngleKind::Pi => r += 1,
            AngleKind::Interior { m } => r += 2 * BigInt::from(m),
        }
    }
    Rational::from_integer(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    B1,
    B2,
    LemmaCanonical,
    LemmaCustom,
    Split,
    Lp,
    Ilp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::B1 => "b1",
            Method::B2 => "b2",
            Method::LemmaCanonical => "lemma_canonical",
            Method::LemmaCustom => "lemma_custom",
            Method::Split => "split",
            Method::Lp => "lp",
            Method::Ilp => "ilp",
        };
        f.write_str(s)
    }
}

/// A bound value: exact in `Q(sqrt q)`, or the upper end of a rigorous
/// enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(QuadValue),
    Upper(Rational),
}

impl BoundValue {
    pub fn rational(x: Rational) -> Self {
        BoundValue::Exact(QuadValue::rational(x))
    }

    pub fn floor(&self) -> BigInt {
        match self {
            BoundValue::Exact(v) => v.floor(),
            BoundValue::Upper(x) => rational::floor(x),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            BoundValue::Exact(v) => v.as_rational(),
            BoundValue::Upper(x) => Some(x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(v) => v.to_f64(),
            BoundValue::Upper(x) => rational::to_f64(x),
        }
    }

    /// Exact string, or a 6 significant digit decimal when `approx`.
    pub fn render(&self, approx: bool) -> String {
        if approx {
            return rational::format_sig(self.to_f64(), 6);
        }
        match self {
            BoundValue::Exact(v) => v.to_string(),
            BoundValue::Upper(x) => format!("<= {}", rational::to_string(x)),
        }
    }

    /// Exact comparison where both values are comparable.
    pub fn checked_cmp(&self, other: &BoundValue) -> Result<std::cmp::Ordering> {
        let as_quad = |v: &BoundValue| match v {
            BoundValue::Exact(x) => x.clone(),
            BoundValue::Upper(x) => QuadValue::rational(x.clone()),
        };
        as_quad(self).checked_cmp(&as_quad(other))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BoundValueRepr {
    Rational(#[serde(with = "rational::serde_str")] Rational),
    Upper {
        #[serde(with = "rational::serde_str")]
        upper: Rational,
    },
    Quad(QuadValue),
}

impl Serialize for BoundValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            BoundValue::Exact(v) => match v.as_rational() {
                Some(x) => BoundValueRepr::Rational(x.clone()),
                None => BoundValueRepr::Quad(v.clone()),
            },
            BoundValue::Upper(x) => BoundValueRepr::Upper { upper: x.clone() },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match BoundValueRepr::deserialize(d)? {
            BoundValueRepr::Rational(x) => BoundValue::rational(x),
            BoundValueRepr::Upper { upper } => BoundValue::Upper(upper),
            BoundValueRepr::Quad(v) => BoundValue::Exact(v),
        })
    }
}

/// Largest integer `g` with `g <= value` (or `g < value` when strict).
pub fn genus_cap(value: &BoundValue, strict: bool) -> BigInt {
    let f = value.floor();
    let integral = match value {
        BoundValue::Exact(v) => v.as_rational().is_some_and(rational::is_integer),
        BoundValue::Upper(x) => rational::is_integer(x),
    };
    if strict && integral {
        f - 1
    } else {
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: Method,
    pub value: BoundValue,
    /// `g < value` when true, `g <= value` otherwise.
    pub strict: bool,
    #[serde(with = "rational::serde_bigint")]
    pub genus_cap: BigInt,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
}

impl BoundReport {
    pub fn new(method: Method, value: BoundValue, strict: bool) -> Self {
        let genus_cap = genus_cap(&value, strict);
        BoundReport { method, value, strict, genus_cap, details: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }
}

/// `B1 = 23 s^2 q^(2s) ln q`, rounded up; `g <= B1`.
pub fn bound_b1(q: u64, s: u64) -> BoundReport {
    assert!(s >= 1, "B1 needs s >= 1");
    let ln_q = ln_upper(q, FORMULA_BITS).hi().clone();
    let v = int(23u64) * int(s * s) * rational::pow(&int(q), 2 * s as i64) * ln_q;
    BoundReport::new(Method::B1, BoundValue::rational(v), false).with("s", s)
}

/// `B2 = (sqrt q + 1)^(2r) (1 + q^(-r)) / 2`, exact; `g < B2`.
pub fn bound_b2(q: u64, r: &Rational) -> BoundReport {
    let two_r = r * int(2);
    assert!(rational::is_integer(&two_r) && !r.is_negative(), "B2 needs 2r a nonnegative integer");
    let n: u64 = two_r.to_integer().try_into().expect("2r too large");
    let root = QuadValue::sqrt_of(q);
    let base = &root + &QuadValue::one();
    let tail = (&QuadValue::one() + &root.pow(n).recip().expect("q > 0")).scale(&rat(1, 2));
    let v = &base.pow(n) * &tail;
    BoundReport::new(Method::B2, BoundValue::Exact(v), true).with("r", rational::to_string(r))
}

/// Values of one factor of `P = prod P_theta` at `sqrt q` and `1/sqrt q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorValue {
    pub angle: String,
    /// `None` for the factor `1 + x` of the angle `pi`.
    pub m: Option<u64>,
    pub at_sqrt_q: Enclosure,
    pub at_inv_sqrt_q: Enclosure,
    /// `-2 cos(m theta)`, the middle coefficient, when it lies in `Q(sqrt q)`.
    pub middle: Option<QuadValue>,
}

/// The canonical `T = (P - 1)^2`, stored through its values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundPolynomial {
    pub q: u64,
    pub factors: Vec<FactorValue>,
    pub p_at_sqrt_q: Enclosure,
    pub p_at_inv_sqrt_q: Enclosure,
    pub t_at_sqrt_q: Enclosure,
    pub t_at_inv_sqrt_q: Enclosure,
    /// `S = {0}`, where `T = x`.
    pub linear: bool,
}

impl BoundPolynomial {
    /// Coefficients `a_1, a_2, ...` of `T` when all of them lie in `Q(sqrt q)`.
    pub fn coefficients(&self) -> Option<Vec<QuadValue>> {
        if self.linear {
            return Some(vec![QuadValue::one()]);
        }
        let mut p: Vec<QuadValue> = vec![QuadValue::one()];
        for f in &self.factors {
            let factor: Vec<QuadValue> = match f.m {
                None => vec![QuadValue::one(), QuadValue::one()],
                Some(m) => {
                    let m = m as usize;
                    let mut c = vec![QuadValue::zero(); 2 * m + 1];
                    c[0] = QuadValue::one();
                    c[m] = f.middle.clone()?;
                    c[2 * m] = QuadValue::one();
                    c
                }
            };
            p = quad_poly_mul(&p, &factor)?;
        }
        p[0] = QuadValue::zero();
        let t = quad_poly_mul(&p, &p)?;
        Some(t[1..].to_vec())
    }
}

fn quad_poly_mul(a: &[QuadValue], b: &[QuadValue]) -> Option<Vec<QuadValue>> {
    let mut out = vec![QuadValue::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(&x.checked_mul(y).ok()?).ok()?;
        }
    }
    Some(out)
}

fn half_power(q: u64, k: u64) -> QuadValue {
    QuadValue::sqrt_of(q).pow(k)
}

/// `V = 2 q^(m/2) cos(m theta)` for an interior angle.
fn scaled_cos(q: u64, angle: &Angle, m: u64, bits: u32) -> Result<Enclosure> {
    Ok(match angle {
        Angle::Class(a) => match &a.source {
            AngleSource::Trace { q, t } => {
                let am = elliptic_power_sums(*q, *t, m as usize).pop().expect("m >= 1");
                Enclosure::rational(Rational::from_integer(am))
            }
            AngleSource::Root(root) => {
                let v = v_polynomial(q, m as usize);
                match root.exact_value() {
                    Some(y) => Enclosure::Exact(v.eval_quad(&y)),
                    None => Enclosure::Approx(root.enclose(&v, bits)),
                }
            }
        },
        Angle::PiMultiple { r, .. } => {
            let x = r * int(m);
            match cos_pi_exact(&x) {
                Some(c) => Enclosure::Exact(half_power(q, m).scale(&(c * int(2)))),
                None => {
                    let c = cos_pi_interval(&x, bits).scale(&int(2));
                    Enclosure::Approx(c.mul(&quad_interval(&half_power(q, m), bits)))
                }
            }
        }
    })
}

fn canonical_polynomial(set: &AngleSet, bits: u32) -> Result<BoundPolynomial> {
    let q = set.q();
    let root = Enclosure::Exact(QuadValue::sqrt_of(q));
    let inv_root = Enclosure::Exact(QuadValue::sqrt_of(q).recip()?);
    let one = Enclosure::one();
    if set.is_zero_only() {
        return Ok(BoundPolynomial {
            q,
            factors: vec![],
            p_at_sqrt_q: one.clone(),
            p_at_inv_sqrt_q: one,
            t_at_sqrt_q: root,
            t_at_inv_sqrt_q: inv_root,
            linear: true,
        });
    }
    let mut factors = Vec::new();
    for a in set.angles() {
        match a.kind() {
            AngleKind::Zero => {}
            AngleKind::Pi => factors.push(FactorValue {
                angle: a.label(),
                m: None,
                at_sqrt_q: one.add(&root, bits),
                at_inv_sqrt_q: one.add(&inv_root, bits),
                middle: None,
            }),
            AngleKind::Interior { m } => {
                let v = scaled_cos(q, a, m, bits)?;
                let qm = Enclosure::rational(rational::pow(&int(q), m as i64));
                let qm_inv = Enclosure::rational(rational::pow(&int(q), -(m as i64)));
                let at_sqrt_q = one.sub(&v, bits).add(&qm, bits);
                let at_inv_sqrt_q = one.sub(&v.mul(&qm_inv, bits), bits).add(&qm_inv, bits);
                let middle = v.exact().and_then(|v| v.checked_div(&half_power(q, m)).ok()).map(|c| -c);
                factors.push(FactorValue { angle: a.label(), m: Some(m), at_sqrt_q, at_inv_sqrt_q, middle });
            }
        }
    }
    let mut p1 = one.clone();
    let mut p2 = one.clone();
    for f in &factors {
        p1 = p1.mul(&f.at_sqrt_q, bits);
        p2 = p2.mul(&f.at_inv_sqrt_q, bits);
    }
    let t1 = p1.sub(&one, bits);
    let t1 = t1.mul(&t1, bits);
    let t2 = p2.sub(&one, bits);
    let t2 = t2.mul(&t2, bits);
    Ok(BoundPolynomial {
        q,
        factors,
        p_at_sqrt_q: p1,
        p_at_inv_sqrt_q: p2,
        t_at_sqrt_q: t1,
        t_at_inv_sqrt_q: t2,
        linear: false,
    })
}

fn enclosure_value(e: Enclosure) -> BoundValue {
    match e {
        Enclosure::Exact(v) => BoundValue::Exact(v),
        Enclosure::Approx(iv) => BoundValue::Upper(iv.hi().clone()),
    }
}

/// The bound `(T(sqrt q) + T(1/sqrt q)) / 2` for the canonical
/// `T = (P - 1)^2` built from the angle set (`T = x` when `S = {0}`).
pub fn lemma_bound_canonical(set: &AngleSet) -> Result<(BoundReport, BoundPolynomial)> {
    if set.is_empty() {
        return Err(Error::NoConstraint);
    }
    let bits = DEFAULT_BITS;
    let poly = canonical_polynomial(set, bits)?;
    let sum = poly.t_at_sqrt_q.add(&poly.t_at_inv_sqrt_q, bits);
    let value = sum.mul(&Enclosure::rational(rat(1, 2)), bits);
    let report = BoundReport::new(Method::LemmaCanonical, enclosure_value(value), false).with("s", set.s());
    Ok((report, poly))
}

/// Shorthand for [`lemma_bound_canonical`] on elliptic classes.
pub fn lemma_bound_for_classes(q: u64, classes: &[WeilClass]) -> Result<BoundReport> {
    Ok(lemma_bound_canonical(&AngleSet::from_classes(q, classes)?)?.0)
}

/// Sign of `A(y) + sqrt(q) B(y)` at a root, exactly.
fn sign_at_root(root: &crate::weil::RealRoot, q: u64, a: &RatPoly, b: &RatPoly) -> i32 {
    let sa = root.sign_of(a);
    let sb = root.sign_of(b);
    if sb == 0 || sa == sb {
        return sa;
    }
    if sa == 0 {
        return sb;
    }
    let d = root.sign_of(&a.mul(a).sub(&b.mul(b).scale(&int(q))));
    match d {
        0 => 0,
        d if d > 0 => sa,
        _ => sb,
    }
}

/// Sign of `Re T(e(theta)) - 1`, or `None` if undecided at `MAX_VERIFY_BITS`.
fn hypothesis_sign(q: u64, angle: &Angle, coeffs: &[QuadValue]) -> Result<Option<i32>> {
    let one = QuadValue::one();
    let exact_sum = |cosines: &dyn Fn(u64) -> Result<QuadValue>| -> Result<i32> {
        let mut s = -&one;
        for (i, a) in coeffs.iter().enumerate() {
            s = s.checked_add(&a.checked_mul(&cosines(i as u64 + 1)?)?)?;
        }
        Ok(s.sign())
    };
    match angle.kind() {
        AngleKind::Zero => return exact_sum(&|_| Ok(one.clone())).map(Some),
        AngleKind::Pi => {
            return exact_sum(&|k| Ok(if k % 2 == 0 { one.clone() } else { -&one })).map(Some);
        }
        AngleKind::Interior { .. } => {}
    }
    match angle {
        Angle::Class(ix) => match &ix.source {
            AngleSource::Trace { t, .. } => {
                let a = elliptic_power_sums(q, *t, coeffs.len());
                let cos = |k: u64| -> Result<QuadValue> {
                    QuadValue::rational(Rational::new(a[k as usize - 1].clone(), BigInt::from(2)))
                        .checked_div(&half_power(q, k))
                };
                exact_sum(&cos).map(Some)
            }
            AngleSource::Root(root) => {
                // cos(k theta) = V_k(y) / (2 q^(k/2)); split a_k / (2 q^(k/2))
                // into alpha_k + beta_k sqrt(q).
                let mut pa = RatPoly::constant(-Rational::one());
                let mut pb = RatPoly::zero();
                let sq = QuadValue::sqrt_of(q);
                for (i, a) in coeffs.iter().enumerate() {
                    let k = i as u64 + 1;
                    let c = a.checked_div(&half_power(q, k).scale(&int(2)))?;
                    let v = v_polynomial(q, k as usize);
                    pa = pa.add(&v.scale(c.a()));
                    if !c.is_rational() {
                        if c.rad() != sq.rad() {
                            return Err(Error::MixedRadicand(c.rad(), sq.rad()));
                        }
                        pb = pb.add(&v.scale(c.b()));
                    }
                }
                Ok(Some(sign_at_root(root, q, &pa, &pb)))
            }
        },
        Angle::PiMultiple { r, .. } => {
            let exact: Option<Vec<Rational>> = (1..=coeffs.len() as u64).map(|k| cos_pi_exact(&(r * int(k)))).collect();
            if let Some(cs) = exact {
                return exact_sum(&|k| Ok(QuadValue::rational(cs[k as usize - 1].clone()))).map(Some);
            }
            let mut bits = 64;
            while bits <= MAX_VERIFY_BITS {
                let mut s = RatInterval::point(-Rational::one());
                for (i, a) in coeffs.iter().enumerate() {
                    let c = cos_pi_interval(&(r * int(i as u64 + 1)), bits);
                    s = s.add(&c.mul(&quad_interval(a, bits)));
                }
                if let Some(sign) = s.sign() {
                    return Ok(Some(sign));
                }
                bits *= 2;
            }
            Ok(None)
        }
    }
}

/// The bound `(T(sqrt q) + T(1/sqrt q)) / 2` for a user supplied
/// `T = a_1 x + ... + a_n x^n`, after checking `a_k >= 0` and
/// `Re T(e(theta)) >= 1` on every angle of the set.
pub fn lemma_bound_custom(set: &AngleSet, coeffs: &[QuadValue]) -> Result<BoundReport> {
    if set.is_empty() {
        return Err(Error::NoConstraint);
    }
    if coeffs.iter().any(|a| a.sign() < 0) {
        return Err(Error::Invalid("T must have nonnegative coefficients".into()));
    }
    let q = set.q();
    for angle in set.angles() {
        match hypothesis_sign(q, angle, coeffs)? {
            Some(s) if s >= 0 => {}
            Some(_) => return Err(Error::HypothesisViolated(angle.label())),
            None => return Err(Error::Inconclusive(angle.label())),
        }
    }
    let mut sum = QuadValue::zero();
    for (i, a) in coeffs.iter().enumerate() {
        let p = half_power(q, i as u64 + 1);
        let both = p.checked_add(&p.recip()?)?;
        sum = sum.checked_add(&a.checked_mul(&both)?)?;
    }
    let value = sum.scale(&rat(1, 2));
    Ok(BoundReport::new(Method::LemmaCustom, BoundValue::Exact(value), false).with("degree", coeffs.len()))
}

/// A lower approximation of `sqrt(ln ln g / (6 ln q))`: some simple factor
/// of the Jacobian has dimension exceeding it. Returns 0 when `ln ln g <= 0`.
pub fn serre_factor_bound(q: u64, g: u64) -> Rational {
    if g < 3 {
        return Rational::zero();
    }
    let ln_g = ln_interval(&int(g), FORMULA_BITS);
    if *ln_g.lo() <= Rational::one() {
        return Rational::zero();
    }
    let lnln = ln_interval(ln_g.lo(), FORMULA_BITS).lo().clone();
    if !lnln.is_positive() {
        return Rational::zero();
    }
    let den = ln_upper(q, FORMULA_BITS).hi() * int(6);
    sqrt_interval(&(lnln / den), FORMULA_BITS).lo().clone()
}

/// `23 d^2 q^(2d) ln q`: curves of larger genus have a simple factor of
/// dimension greater than `d`.
pub fn variety_corollary_bound(q: u64, d: u64) -> BoundReport {
    bound_b1(q, d).with("corollary", "variety")
}

/// `q^x` rounded up for a dyadic rational `x >= 0`, by repeated square roots.
fn pow_dyadic_upper(q: u64, x: &Rational, bits: u32) -> Rational {
    let whole = rational::floor(x);
    let mut frac = x - Rational::from_integer(whole.clone());
    let mut out = Rational::from_integer(num_traits::pow(BigInt::from(q), whole.try_into().expect("exponent")));
    let mut root = int(q);
    while !frac.is_zero() {
        root = sqrt_interval(&root, bits).hi().clone();
        frac *= int(2);
        if frac >= Rational::one() {
            frac -= Rational::one();
            out *= &root;
        }
    }
    out
}

/// `510 q^(8 sqrt q + 3) ln q`, rounded up: a bound on the genus of curves
/// over `F_q` whose Jacobian splits into elliptic curves.
pub fn split_corollary_bound(q: u64) -> Result<BoundReport> {
    crate::weil::prime_power(q)?;
    const J: u32 = 24;
    let exponent = match BigInt::from(q).sqrt() {
        r if &r * &r == BigInt::from(q) => Rational::from_integer(r * 8 + 3),
        _ => {
            let hi = sqrt_interval(&int(q), J + 4).hi() * int(8);
            let scale = BigInt::one() << J;
            Rational::new(rational::ceil(&(hi * int(scale.clone()))), scale) + int(3)
        }
    };
    let power = pow_dyadic_upper(q, &exponent, FORMULA_BITS);
    let v = int(510) * power * ln_upper(q, FORMULA_BITS).hi().clone();
    Ok(BoundReport::new(Method::Split, BoundValue::rational(v), false)
        .with("exponent_upper", rational::to_string(&exponent)))
}

/// Whether level `N` survives the lower bound `(N - 5 sqrt N - 8)/12 <= G`
/// on the genus of `X_0(N)`, decided in integers.
pub fn x0_level_allowed(n: u64, g: u64) -> bool {
    let k = 8 + 12 * g as i128;
    let d = n as i128 - k;
    d <= 0 || d * d <= 25 * n as i128
}

/// Largest `N` allowed by [`x0_level_allowed`] for genus `G`.
pub fn x0_level_filter(g: u64) -> u64 {
    // Allowed levels form an initial segment: past 8 + 12 G the test is a
    // convex quadratic that changes sign once.
    let mut n = 8 + 12 * g;
    while x0_level_allowed(n + 1, g) {
        n += 1;
    }
    n
}
