//! Seeded generators for property suites and batch verification.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eisenstein::{EInt, ProjPoint, UniMat};
use crate::lambda::Horosphere;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform coefficients in `[-bound, bound]`.
pub fn random_eint<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> EInt {
    EInt::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Uniform over elements of norm at most `max_norm`.
pub fn random_eint_norm<R: Rng + ?Sized>(rng: &mut R, max_norm: i64) -> EInt {
    let r = (2.0 * (max_norm as f64).sqrt()).ceil() as i64 + 1;
    loop {
        let x = random_eint(rng, r);
        if x.norm() <= max_norm.into() {
            return x;
        }
    }
}

/// Product of `steps` random elementary shears, so the result lies in SL₂(ℤ[σ]).
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> UniMat {
    let mut m = UniMat::identity();
    for _ in 0..steps {
        let t = random_eint(rng, 2);
        let e = if rng.gen_bool(0.5) { [EInt::one(), t, EInt::zero(), EInt::one()] } else { [EInt::one(), EInt::zero(), t, EInt::one()] };
        m = m.mul(&UniMat::sl2(e).expect("shear"));
    }
    m
}

/// Random SL₂ element scaled by a random unit in the first row, so every unit determinant occurs.
pub fn random_gl2<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> UniMat {
    let m = random_sl2(rng, steps);
    let u = EInt::unit(rng.gen_range(0..6));
    let [a, b, c, d] = m.entries().clone();
    UniMat::gl2([&a * &u, &b * &u, c, d]).expect("unit determinant")
}

/// A random irreducible point, possibly ∞.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> ProjPoint {
    loop {
        let p = random_eint(rng, bound);
        let q = random_eint(rng, bound);
        if let Ok(f) = ProjPoint::new(p, q) {
            return f.reduce();
        }
    }
}

/// A random finite irreducible point with `1 ≤ norm(q) ≤ max_q_norm`.
pub fn random_finite_point<R: Rng + ?Sized>(rng: &mut R, max_q_norm: i64) -> ProjPoint {
    loop {
        let q = random_eint_norm(rng, max_q_norm);
        if q.is_zero() {
            continue;
        }
        let r = (2.0 * q.norm().to_f64().unwrap_or(0.0).sqrt()).ceil() as i64 + 1;
        let p = random_eint(rng, r);
        let f = ProjPoint::new(p, q).expect("q nonzero");
        if f.is_irreducible() {
            return f.reduce();
        }
    }
}

/// A horosphere at a uniform point of the square `[-4, 4]²` with size in
/// `[0.05, 2]`, or at ∞ with probability `p_inf`.
pub fn random_horosphere<R: Rng + ?Sized>(rng: &mut R, p_inf: f64) -> Horosphere {
    let size = rng.gen_range(0.05..2.0);
    let center = if rng.gen_bool(p_inf) { None } else { Some(Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0))) };
    Horosphere::new(center, size).expect("positive size")
}

/// Five horospheres with pairwise distinct centres, at most one at ∞.
pub fn random_horospheres5<R: Rng + ?Sized>(rng: &mut R) -> [Horosphere; 5] {
    let first = random_horosphere(rng, 0.3);
    let rest = [(); 4].map(|_| random_horosphere(rng, 0.0));
    [first, rest[0], rest[1], rest[2], rest[3]]
}
