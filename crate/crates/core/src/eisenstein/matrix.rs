use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::int::EInt;
use super::point::ProjPoint;
use crate::error::{Error, Result};

/// Which determinant a matrix is required to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetKind {
    /// Any unit (GL₂).
    Unit,
    /// Exactly 1 (SL₂).
    One,
}

/// A 2×2 matrix over ℤ[σ] with unit determinant, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniMat {
    m: [EInt; 4],
    kind: DetKind,
}

impl UniMat {
    pub fn new(m: [EInt; 4], kind: DetKind) -> Result<Self> {
        let d = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
        match kind {
            DetKind::Unit if !d.is_unit() => Err(Error::NotUnimodular(d.to_string())),
            DetKind::One if !d.is_one() => Err(Error::NotSl2(d.to_string())),
            _ => Ok(UniMat { m, kind }),
        }
    }

    pub fn gl2(m: [EInt; 4]) -> Result<Self> {
        UniMat::new(m, DetKind::Unit)
    }

    pub fn sl2(m: [EInt; 4]) -> Result<Self> {
        UniMat::new(m, DetKind::One)
    }

    pub fn identity() -> Self {
        UniMat { m: [EInt::one(), EInt::zero(), EInt::zero(), EInt::one()], kind: DetKind::One }
    }

    /// `diag(t, t⁻¹)` for a unit `t = σ^k`.
    pub fn diag_unit(k: i64) -> Self {
        UniMat { m: [EInt::unit(k), EInt::zero(), EInt::zero(), EInt::unit(-k)], kind: DetKind::One }
    }

    /// The matrix whose columns are the representatives of `f` and `g`.
    pub fn from_columns(f: &ProjPoint, g: &ProjPoint) -> Result<Self> {
        UniMat::gl2([f.p().clone(), g.p().clone(), f.q().clone(), g.q().clone()])
    }

    pub fn entries(&self) -> &[EInt; 4] {
        &self.m
    }

    pub fn kind(&self) -> DetKind {
        self.kind
    }

    pub fn det(&self) -> EInt {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn is_sl2(&self) -> bool {
        self.det().is_one()
    }

    /// Re-tags as SL₂ when the determinant is 1.
    pub fn into_sl2(self) -> Result<Self> {
        UniMat::sl2(self.m)
    }

    /// `(p, q) ↦ (ap + bq, cp + dq)`.
    pub fn apply(&self, f: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = &self.m;
        let p = &(a * f.p()) + &(b * f.q());
        let q = &(c * f.p()) + &(d * f.q());
        ProjPoint::new(p, q).expect("invertible map keeps (p, q) nonzero")
    }

    pub fn mul(&self, o: &UniMat) -> UniMat {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        let m = [&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)];
        let kind = if self.kind == DetKind::One && o.kind == DetKind::One { DetKind::One } else { DetKind::Unit };
        UniMat { m, kind }
    }

    pub fn inverse(&self) -> UniMat {
        let di = self.det().unit_inverse().expect("determinant is a unit");
        let [a, b, c, d] = &self.m;
        UniMat { m: [d * &di, -(b * &di), -(c * &di), a * &di], kind: self.kind }
    }

    pub fn transpose(&self) -> UniMat {
        let [a, b, c, d] = self.m.clone();
        UniMat { m: [a, c, b, d], kind: self.kind }
    }

    pub fn neg(&self) -> UniMat {
        UniMat { m: self.m.clone().map(|x| -x), kind: self.kind }
    }

    pub fn scale(&self, u: &EInt) -> Result<UniMat> {
        UniMat::new(self.m.clone().map(|x| &x * u), DetKind::Unit)
    }

    /// Column `j` as a point representative.
    pub fn column(&self, j: usize) -> ProjPoint {
        ProjPoint::new(self.m[j].clone(), self.m[2 + j].clone()).expect("invertible matrix has nonzero columns")
    }
}

/// Möbius action; the matrix type guarantees unimodularity.
pub fn mobius_apply(a: &UniMat, f: &ProjPoint) -> ProjPoint {
    a.apply(f)
}

pub fn mat_inverse(a: &UniMat) -> UniMat {
    a.inverse()
}

impl fmt::Debug for UniMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} {:?}; {:?} {:?})", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

impl fmt::Display for UniMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

impl Serialize for UniMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = <[EInt; 4]>::deserialize(d)?;
        let kind = {
            let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
            if det.is_one() {
                DetKind::One
            } else {
                DetKind::Unit
            }
        };
        UniMat::new(m, kind).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::point::det2;
    use crate::random::{random_gl2, random_point, rng_from_seed};

    fn m(v: [(i64, i64); 4]) -> [EInt; 4] {
        v.map(EInt::from)
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(UniMat::gl2(m([(2, 0), (0, 0), (0, 0), (1, 0)])).is_err());
        assert!(UniMat::sl2(m([(0, 1), (0, 0), (0, 0), (1, 0)])).is_err());
        assert!(UniMat::gl2(m([(0, 1), (0, 0), (0, 0), (1, 0)])).is_ok());
    }

    #[test]
    fn apply_examples() {
        let f = ProjPoint::new(EInt::new(2, 1), EInt::new(1, 1)).unwrap();
        assert_eq!(UniMat::identity().apply(&f), f);
        let s = UniMat::sl2(m([(0, 0), (-1, 0), (1, 0), (0, 0)])).unwrap();
        let img = s.apply(&ProjPoint::infinity());
        assert!(img.point_eq(&ProjPoint::int(0, 0)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(UniMat::identity().inverse(), UniMat::identity());
        let sh = UniMat::sl2(m([(1, 0), (1, 0), (0, 0), (1, 0)])).unwrap();
        assert_eq!(sh.inverse().entries(), &m([(1, 0), (-1, 0), (0, 0), (1, 0)]));
    }

    #[test]
    fn random_inverse_and_det_length() {
        let mut rng = rng_from_seed(11);
        for _ in 0..1000 {
            let a = random_gl2(&mut rng, 6);
            assert_eq!(a.mul(&a.inverse()), UniMat::new(UniMat::identity().entries().clone(), a.kind()).unwrap());
            let f = random_point(&mut rng, 20);
            let g = random_point(&mut rng, 20);
            assert_eq!(det2(&a.apply(&f), &a.apply(&g)), &a.det() * &det2(&f, &g));
            assert_eq!(det2(&a.apply(&f), &a.apply(&g)).norm(), det2(&f, &g).norm());
            assert!(a.apply(&f).is_irreducible());
        }
    }

    #[test]
    fn json_round_trip() {
        let a = UniMat::sl2(m([(1, 0), (1, 1), (0, 0), (1, 0)])).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1,0],[1,1],[0,0],[1,0]]");
        assert_eq!(serde_json::from_str::<UniMat>(&s).unwrap(), a);
        assert!(serde_json::from_str::<UniMat>("[[2,0],[0,0],[0,0],[1,0]]").is_err());
    }
}
