//! The ring ℤ[σ], its fraction field, the projective line over it and
//! unimodular 2×2 matrices.

mod frac;
mod int;
mod matrix;
mod point;

pub use frac::EFrac;
pub use int::{gcd, BigFromJson, EInt, JsonBig};
pub use matrix::{mat_inverse, mobius_apply, DetKind, UniMat};
pub use point::{det2, ProjPoint};

pub(crate) use int::big_to_json;

/// `a² + ab + b²`.
pub fn norm(x: &EInt) -> num_bigint::BigInt {
    x.norm()
}

/// Two representatives name the same point.
pub fn point_eq(f: &ProjPoint, g: &ProjPoint) -> bool {
    f.point_eq(g)
}

pub fn reduce(f: &ProjPoint) -> ProjPoint {
    f.reduce()
}
