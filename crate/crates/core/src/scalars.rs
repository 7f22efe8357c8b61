//! Exact arithmetic in Q and in the cyclotomic fields Q(ζ_n).
//!
//! A [`CycScalar`] of order `n` stores its coordinates in the power basis
//! `1, ζ_n, ..., ζ_n^{φ(n)-1}` of `Q[x]/(Φ_n)`. Mixed-order arithmetic embeds
//! both operands into `Q(ζ_lcm)` first. Elements whose non-constant
//! coordinates vanish are demoted to order 1 after every operation, so that
//! rational values (the vast majority in practice) stay on the fast path.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn prime_divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Reduction data for one cyclotomic field.
struct FieldTables {
    phi: usize,
    /// `x^k mod Φ_n` for `0 <= k < n`.
    powers: Vec<Vec<BigInt>>,
}

static TABLES: Lazy<RwLock<HashMap<u32, Arc<FieldTables>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn tables(n: u32) -> Arc<FieldTables> {
    if let Some(t) = TABLES.read().unwrap().get(&n) {
        return t.clone();
    }
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x, then reduce the x^phi term
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for i in 0..phi {
                cur[i] -= &top * &phi_poly[i];
            }
        }
    }
    let t = Arc::new(FieldTables { phi, powers });
    TABLES.write().unwrap().insert(n, t.clone());
    t
}

/// Solve `Σ_j x_j cols[j] = target` over Q. Returns `None` when inconsistent.
fn solve_rational(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let ncols = cols.len();
    // augmented matrix, row-major
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..ncols {
        let Some(p) = (pr..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pr, p);
        let inv = a[pr][c].recip();
        for v in a[pr].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != pr && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=ncols {
                    let t = &f * &a[pr][k];
                    a[r][k] -= t;
                }
            }
        }
        pivots.push(c);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    if a[pr..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][ncols].clone();
    }
    Some(x)
}

/// An exact element of the cyclotomic field Q(ζ_n).
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    /// Builds a scalar from power-basis coordinates; `coeffs.len()` must be φ(order).
    pub fn new(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Format("cyclotomic order must be positive".into()));
        }
        if coeffs.len() != euler_phi(order) {
            return Err(Error::Format(format!(
                "order {order} needs {} coefficients, got {}",
                euler_phi(order),
                coeffs.len()
            )));
        }
        Ok(Self::from_parts(order, coeffs))
    }

    fn from_parts(order: u32, coeffs: Vec<Rational>) -> Self {
        let mut s = CycScalar { order, coeffs };
        s.demote();
        s
    }

    fn demote(&mut self) {
        if self.order > 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
    }

    pub fn zero() -> Self {
        CycScalar { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        CycScalar { order: 1, coeffs: vec![Rational::one()] }
    }

    pub fn from_rational(q: Rational) -> Self {
        CycScalar { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_n^k in canonical reduced form.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order zero");
        let t = tables(n);
        let e = k.rem_euclid(n as i64) as usize;
        let coeffs = t.powers[e].iter().map(|c| Rational::from_integer(c.clone())).collect();
        Self::from_parts(n, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.coeffs[0].is_one()
    }

    /// The rational value, if this scalar lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_constant().then(|| &self.coeffs[0])
    }

    /// Power-basis coordinates of the image under Q(ζ_n) → Q(ζ_m); requires `n | m`.
    pub fn coeffs_in(&self, m: u32) -> Vec<Rational> {
        self.embed(m).coeffs
    }

    fn embed(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.order), "cannot embed order {} into {}", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let t = tables(m);
        let step = (m / self.order) as usize;
        let mut out = vec![Rational::zero(); t.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&t.powers[i * step]) {
                if !p.is_zero() {
                    *o += c * Rational::from_integer(p.clone());
                }
            }
        }
        CycScalar { order: m, coeffs: out }
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.order.lcm(&b.order);
        (a.embed(m), b.embed(m))
    }

    /// Representative in the smallest cyclotomic field containing the value.
    pub fn normalized(&self) -> Self {
        let mut cur = self.clone();
        'outer: loop {
            if cur.order == 1 {
                return cur;
            }
            for p in prime_divisors(cur.order) {
                let m = cur.order / p;
                let basis: Vec<Vec<Rational>> = (0..euler_phi(m))
                    .map(|i| Self::root_of_unity(m, i as i64).coeffs_in(cur.order))
                    .collect();
                if let Some(x) = solve_rational(&basis, &cur.coeffs) {
                    cur = Self::from_parts(m, x);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let phi = self.coeffs.len();
        let cols: Vec<Vec<Rational>> = (0..phi)
            .map(|j| (self * &Self::root_of_unity(self.order, j as i64)).coeffs_in(self.order))
            .collect();
        let mut e0 = vec![Rational::zero(); phi];
        e0[0] = Rational::one();
        let x = solve_rational(&cols, &e0).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_parts(self.order, x))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_parts(self.order, self.coeffs.iter().map(|c| c * q).collect())
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.order == rhs.order {
            let c = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CycScalar::from_parts(self.order, c);
        }
        let (a, b) = CycScalar::lift_pair(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        if self.order == rhs.order {
            let c = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
            return CycScalar::from_parts(self.order, c);
        }
        let (a, b) = CycScalar::lift_pair(self, rhs);
        &a - &b
    }
}

fn rational_product(a: &Rational, b: &Rational) -> CycScalar {
    let q = if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else if a.is_zero() || b.is_zero() {
        Rational::zero()
    } else if *a == -Rational::one() {
        -b
    } else if *b == -Rational::one() {
        -a
    } else {
        a * b
    };
    CycScalar::from_rational(q)
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if self.order == 1 && rhs.order == 1 {
            return rational_product(&self.coeffs[0], &rhs.coeffs[0]);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        if self.order != rhs.order {
            let (a, b) = CycScalar::lift_pair(self, rhs);
            return &a * &b;
        }
        let n = self.order as usize;
        let t = tables(self.order);
        let mut by_power = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    by_power[(i + j) % n] += a * b;
                }
            }
        }
        let mut out = vec![Rational::zero(); t.phi];
        for (k, c) in by_power.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < t.phi {
                out[k] += c;
            } else {
                for (o, p) in out.iter_mut().zip(&t.powers[k]) {
                    if !p.is_zero() {
                        *o += c * Rational::from_integer(p.clone());
                    }
                }
            }
        }
        CycScalar::from_parts(self.order, out)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $f(self, rhs: CycScalar) -> CycScalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $f(self, rhs: &CycScalar) -> CycScalar {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.normalized();
        if let Some(q) = s.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        write!(f, "(")?;
        for (i, c) in s.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z{}^{i}", s.order)?,
                (_, false) => write!(f, "{a}*z{}^{i}", s.order)?,
            }
        }
        write!(f, ")")
    }
}

/// Wire form `{"n": order, "c": [["num", "den"], ...]}`.
#[derive(Serialize, Deserialize)]
struct ScalarWire {
    n: u32,
    c: Vec<(String, String)>,
}

/// Hand-written inputs may also use a bare integer or a `"p/q"` string.
#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarInput {
    Wire(ScalarWire),
    Int(i64),
    Text(String),
}

fn parse_int(s: &str) -> std::result::Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}"))
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let s = self.normalized();
        ScalarWire {
            n: s.order,
            c: s.coeffs.iter().map(|q| (q.numer().to_string(), q.denom().to_string())).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match ScalarInput::deserialize(de)? {
            ScalarInput::Wire(w) => {
                let coeffs = w
                    .c
                    .iter()
                    .map(|(n, d)| {
                        let d = parse_int(d)?;
                        if d.is_zero() {
                            return Err("zero denominator".to_string());
                        }
                        Ok(Rational::new(parse_int(n)?, d))
                    })
                    .collect::<std::result::Result<Vec<_>, String>>()
                    .map_err(D::Error::custom)?;
                CycScalar::new(w.n, coeffs).map_err(D::Error::custom)
            }
            ScalarInput::Int(n) => Ok(CycScalar::from_int(n)),
            ScalarInput::Text(t) => {
                let q = match t.split_once('/') {
                    Some((n, d)) => {
                        let d = parse_int(d).map_err(D::Error::custom)?;
                        if d.is_zero() {
                            return Err(D::Error::custom("zero denominator"));
                        }
                        Rational::new(parse_int(n).map_err(D::Error::custom)?, d)
                    }
                    None => Rational::from_integer(parse_int(&t).map_err(D::Error::custom)?),
                };
                Ok(CycScalar::from_rational(q))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(n, k)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(CycScalar::from_frac(1, 2) + CycScalar::from_frac(1, 3), CycScalar::from_frac(5, 6));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycScalar::from_int(-1));
    }

    #[test]
    fn zeta6_squared() {
        // Φ_6 = x² - x + 1, so x² = x - 1
        let expect = &z(6, 1) - &CycScalar::one();
        assert_eq!(&z(6, 1) * &z(6, 1), expect);
        assert_eq!(z(6, 2), expect);
    }

    #[test]
    fn small_roots() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(2, 1), CycScalar::from_int(-1));
        assert!(z(3, 1).pow(3).unwrap().is_one());
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn multiplicative_order_of_roots() {
        for n in 1..=16u32 {
            let g = z(n, 1);
            let mut acc = CycScalar::one();
            for j in 1..n {
                acc = &acc * &g;
                assert!(!acc.is_one(), "ζ_{n}^{j} = 1");
            }
            assert!((&acc * &g).is_one());
            for k in 0..n as i64 {
                let ord = n / (n.gcd(&(k as u32)).max(1));
                let ord = if k == 0 { 1 } else { ord };
                assert!(z(n, k).pow(ord as i64).unwrap().is_one());
            }
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(CycScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_orders_compare_and_normalize() {
        // ζ_4 viewed inside Q(ζ_12)
        let a = z(4, 1).embed(12);
        assert_eq!(a.order(), 12);
        assert_eq!(a, z(4, 1));
        assert_eq!(a.normalized().order(), 4);
        assert!(CycScalar::one().embed(12).is_one());
        // ζ_3 · ζ_4 = ζ_12^7
        assert_eq!(&z(3, 1) * &z(4, 1), z(12, 7));
        // -ζ_3^2 = ζ_6: normalized form lives in the smaller field Q(ζ_3)
        let m = -z(3, 2);
        assert_eq!(m, z(6, 1));
        assert_eq!(z(6, 1).normalized().order(), 3);
        // sqrt(-1) + its conjugate collapses to Q
        assert_eq!((&z(8, 2) + &z(8, 6)).order(), 1);
    }

    #[test]
    fn wire_roundtrip_and_shorthand() {
        let x = &z(12, 5) + &CycScalar::from_frac(-3, 7);
        let s = serde_json::to_string(&x).unwrap();
        let y: CycScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let h: CycScalar = serde_json::from_str("\"-1/2\"").unwrap();
        assert_eq!(h, CycScalar::from_frac(-1, 2));
        let i: CycScalar = serde_json::from_str("3").unwrap();
        assert_eq!(i, CycScalar::from_int(3));
        assert_eq!(serde_json::to_string(&CycScalar::from_frac(1, 2)).unwrap(), r#"{"n":1,"c":[["1","2"]]}"#);
        assert!(serde_json::from_str::<CycScalar>(r#"{"n":4,"c":[["1","1"]]}"#).is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = CycScalar> {
        let orders = prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]);
        (orders, prop::collection::vec((-4i64..=4, 1i64..=3), 8)).prop_map(|(n, cs)| {
            let phi = euler_phi(n);
            let coeffs = cs.into_iter().take(phi).map(|(a, b)| Rational::new(a.into(), b.into())).collect();
            CycScalar::new(n, coeffs).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn embedding_is_ring_hom(a in arb_scalar(), b in arb_scalar()) {
            let m = 120u32;
            prop_assert_eq!((&a * &b).coeffs_in(m), (&a.embed(m) * &b.embed(m)).coeffs_in(m));
            prop_assert_eq!((&a + &b).coeffs_in(m), (&a.embed(m) + &b.embed(m)).coeffs_in(m));
            prop_assert_eq!(a.normalized(), a);
        }
    }
}
