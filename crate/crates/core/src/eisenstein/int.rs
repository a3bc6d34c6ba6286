//! Eisenstein integers `a + bσ` with `σ = e^{iπ/3}`, so `σ² = σ − 1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `a + bσ` with arbitrary-precision coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EInt {
    pub a: BigInt,
    pub b: BigInt,
}

const UNIT_COEFFS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

impl EInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EInt { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        EInt { a: a.into(), b: BigInt::zero() }
    }

    pub fn zero() -> Self {
        EInt::default()
    }

    pub fn one() -> Self {
        EInt::new(1, 0)
    }

    pub fn sigma() -> Self {
        EInt::new(0, 1)
    }

    /// `σ^k` for any integer `k` (exponent taken mod 6).
    pub fn unit(k: i64) -> Self {
        let (a, b) = UNIT_COEFFS[k.rem_euclid(6) as usize];
        EInt::new(a, b)
    }

    /// All six units in the order `σ^0, …, σ^5`.
    pub fn units() -> [EInt; 6] {
        std::array::from_fn(|k| EInt::unit(k as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Rational integer (no σ component).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugate: `conj(a + bσ) = (a + b) − bσ`.
    pub fn conj(&self) -> Self {
        EInt { a: &self.a + &self.b, b: -&self.b }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// `k` with `self = σ^k`, if `self` is a unit.
    pub fn unit_exponent(&self) -> Option<u8> {
        let (a, b) = (self.a.to_i64()?, self.b.to_i64()?);
        UNIT_COEFFS.iter().position(|&u| u == (a, b)).map(|k| k as u8)
    }

    /// Inverse of a unit; `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.unit_exponent().map(|k| EInt::unit(-(k as i64)))
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a + 0.5 * b, b * 3f64.sqrt() / 2.0)
    }

    /// Sector `k ∈ 0..6` with `arg(self) ∈ [kπ/3, (k+1)π/3)`, from coefficient
    /// signs only. The zero element lies in sector 0.
    pub fn sector6(&self) -> u8 {
        if self.is_zero() {
            return 0;
        }
        let s = lower_sector(&self.a, &self.b);
        match s {
            Some(k) => k,
            None => 3 + lower_sector(&-&self.a, &-&self.b).expect("nonzero element has a sector"),
        }
    }

    /// `⌊arg / (2π/3)⌋ ∈ {0, 1, 2}`; zero maps to 0.
    pub fn sector3(&self) -> u8 {
        self.sector6() / 2
    }

    /// Exact division, `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &EInt) -> Option<EInt> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let z = self * &other.conj();
        let (qa, ra) = z.a.div_rem(&n);
        let (qb, rb) = z.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(EInt { a: qa, b: qb })
    }

    /// Euclidean division: `self = q·d + r` with `norm(r) < norm(d)`.
    /// Each rational coefficient of `self/d` is rounded to nearest, ties to even.
    pub fn div_rem_euclid(&self, d: &EInt) -> Result<(EInt, EInt)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm();
        let z = self * &d.conj();
        let q = EInt { a: round_half_even(&z.a, &n), b: round_half_even(&z.b, &n) };
        let r = self - &(&q * d);
        assert!(r.norm() < n, "Euclidean remainder did not shrink");
        Ok((q, r))
    }

    /// Extended gcd: `(g, s, t)` with `s·x + t·y = g`.
    pub fn ext_gcd(x: &EInt, y: &EInt) -> Result<(EInt, EInt, EInt)> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (x.clone(), y.clone());
        let (mut s0, mut s1) = (EInt::one(), EInt::zero());
        let (mut t0, mut t1) = (EInt::zero(), EInt::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem_euclid(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        Ok((r0, s0, t0))
    }

    pub fn pow(&self, mut e: u32) -> EInt {
        let mut base = self.clone();
        let mut acc = EInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// gcd over ℤ[σ], unique up to units.
pub fn gcd(x: &EInt, y: &EInt) -> Result<EInt> {
    EInt::ext_gcd(x, y).map(|(g, _, _)| g)
}

// Sectors 0..3 (upper half plane incl. the positive real ray), else None.
fn lower_sector(a: &BigInt, b: &BigInt) -> Option<u8> {
    let s = a + b;
    if a.is_positive() && !b.is_negative() {
        Some(0)
    } else if !a.is_positive() && s.is_positive() {
        Some(1)
    } else if b.is_positive() && !s.is_positive() {
        Some(2)
    } else {
        None
    }
}

fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let twice: BigInt = &r * 2;
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

impl fmt::Display for EInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}σ", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{}{}σ", self.a, self.b),
            _ => write!(f, "{}+{}σ", self.a, self.b),
        }
    }
}

impl fmt::Debug for EInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

impl From<i64> for EInt {
    fn from(a: i64) -> Self {
        EInt::from_int(a)
    }
}

impl From<(i64, i64)> for EInt {
    fn from((a, b): (i64, i64)) -> Self {
        EInt::new(a, b)
    }
}

impl<'a> Add<&'a EInt> for &'a EInt {
    type Output = EInt;
    fn add(self, o: &'a EInt) -> EInt {
        EInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a EInt> for &'a EInt {
    type Output = EInt;
    fn sub(self, o: &'a EInt) -> EInt {
        EInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a EInt> for &'a EInt {
    type Output = EInt;
    fn mul(self, o: &'a EInt) -> EInt {
        let bd = &self.b * &o.b;
        EInt { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a + bd }
    }
}

impl Neg for &EInt {
    type Output = EInt;
    fn neg(self) -> EInt {
        EInt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for EInt {
    type Output = EInt;
    fn neg(self) -> EInt {
        EInt { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<EInt> for EInt {
            type Output = EInt;
            fn $m(self, o: EInt) -> EInt {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a EInt> for EInt {
            type Output = EInt;
            fn $m(self, o: &'a EInt) -> EInt {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<EInt> for &'a EInt {
            type Output = EInt;
            fn $m(self, o: EInt) -> EInt {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&EInt> for EInt {
    fn add_assign(&mut self, o: &EInt) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&EInt> for EInt {
    fn sub_assign(&mut self, o: &EInt) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl std::iter::Sum for EInt {
    fn sum<I: Iterator<Item = EInt>>(iter: I) -> EInt {
        iter.fold(EInt::zero(), |acc, x| acc + x)
    }
}

// JSON: [a, b]; integers outside the 53-bit safe range become decimal strings.

const SAFE: i64 = (1i64 << 53) - 1;

pub(crate) fn big_to_json<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) if (-SAFE..=SAFE).contains(&v) => s.serialize_i64(v),
        _ => s.serialize_str(&x.to_string()),
    }
}

/// Serializes a big integer with the safe-range rule.
pub struct JsonBig<'a>(pub &'a BigInt);

impl Serialize for JsonBig<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        big_to_json(self.0, s)
    }
}

/// Accepts a JSON integer or a decimal string.
pub struct BigFromJson(pub BigInt);

impl<'de> Deserialize<'de> for BigFromJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = BigInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BigInt, E> {
                v.trim().parse().map_err(|_| E::custom(format!("bad integer string {v:?}")))
            }
        }
        d.deserialize_any(V).map(BigFromJson)
    }
}

impl Serialize for EInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&JsonBig(&self.a))?;
        t.serialize_element(&JsonBig(&self.b))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for EInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = EInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a two-element array [a, b]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<EInt, A::Error> {
                let a: BigFromJson = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let b: BigFromJson = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(EInt { a: a.0, b: b.0 })
            }
        }
        d.deserialize_seq(V)
    }
}
