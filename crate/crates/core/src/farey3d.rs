//! Combinatorics of the tetrahedral graph 𝒯: det-lengths, edges, faces,
//! fundamental tetrahedra and reflection across a face.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{det2, EInt, ProjPoint, UniMat};
use crate::error::{Error, Result};

/// Three vertices of a triangle of 𝒯.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(pub [ProjPoint; 3]);

/// Four vertices of a fundamental (regular ideal) tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tetra(pub [ProjPoint; 4]);

impl Face {
    pub fn apply(&self, a: &UniMat) -> Face {
        Face(self.0.clone().map(|f| a.apply(&f)))
    }
}

impl Tetra {
    /// The standard tetrahedron `(0, 1, σ, ∞)`.
    pub fn standard() -> Tetra {
        Tetra([ProjPoint::int(0, 0), ProjPoint::int(1, 0), ProjPoint::int(0, 1), ProjPoint::infinity()])
    }

    pub fn apply(&self, a: &UniMat) -> Tetra {
        Tetra(self.0.clone().map(|f| a.apply(&f)))
    }

    /// The face opposite vertex `k`.
    pub fn face_without(&self, k: usize) -> Face {
        let v: Vec<_> = (0..4).filter(|&i| i != k).map(|i| self.0[i].clone()).collect();
        Face([v[0].clone(), v[1].clone(), v[2].clone()])
    }

    pub fn contains(&self, f: &ProjPoint) -> bool {
        self.0.iter().any(|v| v.point_eq(f))
    }
}

fn ensure_distinct(points: &[ProjPoint]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].point_eq(&points[j]) {
                return Err(Error::Coincident(points[i].to_string()));
            }
        }
    }
    Ok(())
}

/// `l(u, v)² = norm(det2(u, v))` for irreducible representatives.
pub fn det_length_sq(u: &ProjPoint, v: &ProjPoint) -> Result<BigInt> {
    u.require_irreducible()?;
    v.require_irreducible()?;
    Ok(det2(u, v).norm())
}

fn edge_len_sq(u: &ProjPoint, v: &ProjPoint) -> BigInt {
    det2(&u.reduce(), &v.reduce()).norm()
}

pub fn is_edge(u: &ProjPoint, v: &ProjPoint) -> Result<bool> {
    ensure_distinct(&[u.clone(), v.clone()])?;
    Ok(edge_len_sq(u, v).is_one())
}

// Rescales v so that det2(u, v) = 1. Inputs must be reduced and adjacent.
fn normalised_pair(u: &ProjPoint, v: &ProjPoint) -> (ProjPoint, ProjPoint) {
    let d = det2(u, v);
    let di = d.unit_inverse().expect("adjacent points have unit determinant");
    (u.clone(), v.scale(&di))
}

fn farey_point(u: &ProjPoint, v: &ProjPoint, k: i64) -> ProjPoint {
    let s = EInt::unit(k);
    ProjPoint::new(u.p() + &(&s * v.p()), u.q() + &(&s * v.q())).expect("sum of adjacent points is nonzero")
}

// The six points (p + σ^i r)/(q + σ^i s) with det2(u, v) = 1, in order i = 0..5.
fn farey_ring(u: &ProjPoint, v: &ProjPoint) -> [ProjPoint; 6] {
    let (u, v) = normalised_pair(&u.reduce(), &v.reduce());
    std::array::from_fn(|i| farey_point(&u, &v, i as i64).reduce())
}

/// The six points completing the edge `uv` to a triangle.
pub fn symmetric_farey_sum(u: &ProjPoint, v: &ProjPoint) -> Result<[ProjPoint; 6]> {
    if !is_edge(u, v)? {
        return Err(Error::NotEdge(u.to_string(), v.to_string()));
    }
    Ok(farey_ring(u, v))
}

fn ring_index(ring: &[ProjPoint; 6], w: &ProjPoint) -> Option<usize> {
    ring.iter().position(|x| x.point_eq(w))
}

pub fn is_face(t: &Face) -> Result<bool> {
    let [a, b, c] = &t.0;
    ensure_distinct(&t.0)?;
    if !edge_len_sq(a, b).is_one() {
        return Ok(false);
    }
    Ok(ring_index(&farey_ring(a, b), c).is_some())
}

/// The two apexes completing a face to a fundamental tetrahedron.
pub fn apexes(face: &Face) -> Result<[ProjPoint; 2]> {
    if !is_face(face)? {
        return Err(Error::NotFace);
    }
    let [a, b, c] = &face.0;
    let ring = farey_ring(a, b);
    let i = ring_index(&ring, c).expect("face vertex lies on the ring");
    Ok([ring[(i + 1) % 6].clone(), ring[(i + 5) % 6].clone()])
}

pub fn is_fundamental_tetrahedron(t: &Tetra) -> Result<bool> {
    ensure_distinct(&t.0)?;
    const PAIRS: [(usize, usize, usize, usize); 6] = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2), (1, 2, 0, 3), (1, 3, 0, 2), (2, 3, 0, 1)];
    for &(i, j, k, l) in &PAIRS {
        let (a, b) = (&t.0[i], &t.0[j]);
        if !edge_len_sq(a, b).is_one() {
            continue;
        }
        let ring = farey_ring(a, b);
        for (g, d) in [(&t.0[k], &t.0[l]), (&t.0[l], &t.0[k])] {
            if let (Some(x), Some(y)) = (ring_index(&ring, g), ring_index(&ring, d)) {
                if (x + 1) % 6 == y || (y + 1) % 6 == x {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The other apex over `face`, i.e. the tetrahedron adjacent across the face.
pub fn reflect_apex(face: &Face, apex: &ProjPoint) -> Result<ProjPoint> {
    let [x, y] = apexes(face)?;
    if apex.point_eq(&x) {
        Ok(y)
    } else if apex.point_eq(&y) {
        Ok(x)
    } else {
        Err(Error::NotTetrahedron)
    }
}

/// `p/q, r/s, (p+r)/(q+s), (p+σr)/(q+σs)` after normalising `det2 = 1`.
pub fn tetrahedron_on_edge(u: &ProjPoint, v: &ProjPoint) -> Result<Tetra> {
    if !is_edge(u, v)? {
        return Err(Error::NotEdge(u.to_string(), v.to_string()));
    }
    let (u, v) = normalised_pair(&u.reduce(), &v.reduce());
    let a = farey_point(&u, &v, 0).reduce();
    let b = farey_point(&u, &v, 1).reduce();
    Ok(Tetra([u.reduce(), v.reduce(), a, b]))
}
