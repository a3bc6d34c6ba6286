use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize};

use super::int::{gcd, EInt};
use crate::error::{Error, Result};

/// A fraction `p/q` over ℤ[σ], i.e. a point of Q̂(σ) with a chosen representative.
/// `(0, 0)` is excluded at construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjPoint {
    p: EInt,
    q: EInt,
}

impl ProjPoint {
    pub fn new(p: EInt, q: EInt) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroFraction);
        }
        Ok(ProjPoint { p, q })
    }

    pub fn infinity() -> Self {
        ProjPoint { p: EInt::one(), q: EInt::zero() }
    }

    /// The point `z/1`.
    pub fn from_eint(z: EInt) -> Self {
        ProjPoint { p: z, q: EInt::one() }
    }

    /// The point `(a + bσ)/1`.
    pub fn int(a: i64, b: i64) -> Self {
        ProjPoint::from_eint(EInt::new(a, b))
    }

    pub fn p(&self) -> &EInt {
        &self.p
    }

    pub fn q(&self) -> &EInt {
        &self.q
    }

    pub fn into_parts(self) -> (EInt, EInt) {
        (self.p, self.q)
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_irreducible(&self) -> bool {
        gcd(&self.p, &self.q).map(|g| g.is_unit()).unwrap_or(false)
    }

    /// Divides out the gcd and rotates by the unit putting `arg(q)` in `[0, π/3)`;
    /// `∞` becomes `1/0`.
    pub fn reduce(&self) -> ProjPoint {
        if self.q.is_zero() {
            return ProjPoint::infinity();
        }
        let g = gcd(&self.p, &self.q).expect("valid point");
        let p = self.p.exact_div(&g).expect("gcd divides");
        let q = self.q.exact_div(&g).expect("gcd divides");
        let u = EInt::unit(-(q.sector6() as i64));
        ProjPoint { p: &p * &u, q: &q * &u }
    }

    /// The reduced form, failing if the representative was not irreducible.
    pub fn require_irreducible(&self) -> Result<()> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(Error::Reducible(self.to_string()))
        }
    }

    pub fn point_eq(&self, other: &ProjPoint) -> bool {
        det2(self, other).is_zero()
    }

    /// Multiplies both coordinates by `c`.
    pub fn scale(&self, c: &EInt) -> ProjPoint {
        ProjPoint { p: &self.p * c, q: &self.q * c }
    }

    /// Complex conjugate of both coordinates.
    pub fn conj(&self) -> ProjPoint {
        ProjPoint { p: self.p.conj(), q: self.q.conj() }
    }

    pub fn neg(&self) -> ProjPoint {
        ProjPoint { p: -&self.p, q: -&self.q }
    }

    /// Coefficients `(u, v)` of `p/q = u + vσ` as exact rationals `(num_u, num_v, den)`.
    pub fn rational_coords(&self) -> Option<(BigInt, BigInt, BigInt)> {
        if self.q.is_zero() {
            return None;
        }
        let z = &self.p * &self.q.conj();
        Some((z.a, z.b, self.q.norm()))
    }

    /// Complex embedding; `None` at ∞.
    pub fn to_complex(&self) -> Option<Complex64> {
        let (u, v, n) = self.rational_coords()?;
        let n = n.to_f64()?;
        let u = u.to_f64()? / n;
        let v = v.to_f64()? / n;
        Some(Complex64::new(u + 0.5 * v, v * 3f64.sqrt() / 2.0))
    }

    /// Value in ℤ[σ] when `q` is a unit.
    pub fn as_eint(&self) -> Option<EInt> {
        self.p.exact_div(&self.q).filter(|_| self.q.is_unit())
    }
}

/// `p₁q₂ − p₂q₁`.
pub fn det2(f: &ProjPoint, g: &ProjPoint) -> EInt {
    &(&f.p * &g.q) - &(&g.p * &f.q)
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.p, self.q)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.p, self.q)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            p: EInt,
            q: EInt,
        }
        let r = Raw::deserialize(d)?;
        ProjPoint::new(r.p, r.q).map_err(serde::de::Error::custom)
    }
}
