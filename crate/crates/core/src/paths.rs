//! Paths in 𝒯 with normalised or skew-normalised representatives,
//! 𝒯-angle sequences, continued fractions and generalised angles.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::eisenstein::{det2, EFrac, EInt, ProjPoint, UniMat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathMode {
    Plain,
    Normalised,
    SkewNormalised,
}

/// A window `v_base, v_{base+1}, …` of a path, with representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRep {
    pub mode: PathMode,
    pub base_index: i64,
    pub vertices: Vec<ProjPoint>,
}

/// `(−1)^i` as an element of ℤ[σ].
pub(crate) fn sign_pow(i: i64) -> EInt {
    if i.rem_euclid(2) == 0 {
        EInt::one()
    } else {
        -EInt::one()
    }
}

/// Required `det2(v_i, v_{i+1})` for a mode, `None` for plain paths.
fn contract(mode: PathMode, i: i64) -> Option<EInt> {
    match mode {
        PathMode::Plain => None,
        PathMode::Normalised => Some(EInt::one()),
        PathMode::SkewNormalised => Some(sign_pow(i)),
    }
}

impl PathRep {
    pub fn new(vertices: Vec<ProjPoint>, mode: PathMode, base_index: i64) -> Result<Self> {
        let p = PathRep { mode, base_index, vertices };
        p.validate()?;
        Ok(p)
    }

    /// Consecutive vertices are edges and the mode's determinant contract holds.
    pub fn validate(&self) -> Result<()> {
        for (k, w) in self.vertices.windows(2).enumerate() {
            let i = self.base_index + k as i64;
            let d = det2(&w[0], &w[1]);
            match contract(self.mode, i) {
                Some(t) if d != t => return Err(Error::PathContract(i)),
                None if !d.is_unit() || !w[0].is_irreducible() || !w[1].is_irreducible() => {
                    return Err(Error::NotEdge(w[0].to_string(), w[1].to_string()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// One past the last stored index.
    pub fn end_index(&self) -> i64 {
        self.base_index + self.vertices.len() as i64
    }

    pub fn get(&self, i: i64) -> Option<&ProjPoint> {
        let k = i - self.base_index;
        if k < 0 {
            None
        } else {
            self.vertices.get(k as usize)
        }
    }

    pub fn at(&self, i: i64) -> Result<&ProjPoint> {
        self.get(i).ok_or(Error::MissingIndex(i))
    }

    /// Simultaneous action of a matrix on every representative.
    pub fn apply(&self, a: &UniMat) -> PathRep {
        PathRep { mode: self.mode, base_index: self.base_index, vertices: self.vertices.iter().map(|v| a.apply(v)).collect() }
    }

    /// First pair of stored indices `j < l` naming the same point.
    pub fn revisit(&self) -> Option<(i64, i64)> {
        let n = self.vertices.len();
        for l in 0..n {
            for j in 0..l {
                if self.vertices[j].point_eq(&self.vertices[l]) {
                    return Some((self.base_index + j as i64, self.base_index + l as i64));
                }
            }
        }
        None
    }
}

fn chain(vertices: &[ProjPoint], seed: &ProjPoint, base: i64, mode: PathMode) -> Result<PathRep> {
    let Some(first) = vertices.first() else {
        return Err(Error::TooShort { need: 1, got: 0 });
    };
    seed.require_irreducible()?;
    if !seed.point_eq(first) {
        return Err(Error::SeedMismatch);
    }
    let mut reps = vec![seed.clone()];
    for (k, next) in vertices.iter().enumerate().skip(1) {
        let i = base + k as i64 - 1;
        let prev = &reps[k - 1];
        let next = next.reduce();
        let d = det2(prev, &next);
        let di = d.unit_inverse().ok_or_else(|| Error::NotEdge(prev.to_string(), next.to_string()))?;
        let target = contract(mode, i).expect("normalising mode");
        reps.push(next.scale(&(&target * &di)));
    }
    Ok(PathRep { mode, base_index: base, vertices: reps })
}

/// The unique normalised chain (`det2(vᵢ, vᵢ₊₁) = 1`) starting from `seed`.
pub fn normalise_path(vertices: &[ProjPoint], seed: &ProjPoint) -> Result<PathRep> {
    chain(vertices, seed, 0, PathMode::Normalised)
}

pub fn normalise_path_at(vertices: &[ProjPoint], seed: &ProjPoint, base_index: i64) -> Result<PathRep> {
    chain(vertices, seed, base_index, PathMode::Normalised)
}

/// The unique skew-normalised chain (`det2(vᵢ, vᵢ₊₁) = (−1)^i`) starting from `seed`.
pub fn skew_normalise(vertices: &[ProjPoint], seed: &ProjPoint) -> Result<PathRep> {
    chain(vertices, seed, 0, PathMode::SkewNormalised)
}

pub fn skew_normalise_at(vertices: &[ProjPoint], seed: &ProjPoint, base_index: i64) -> Result<PathRep> {
    chain(vertices, seed, base_index, PathMode::SkewNormalised)
}

fn flip_sign(i: i64) -> bool {
    matches!(i.rem_euclid(4), 2 | 3)
}

fn convert(path: &PathRep, from: PathMode, to: PathMode) -> Result<PathRep> {
    if path.mode != from {
        return Err(Error::PathContract(path.base_index));
    }
    let vertices =
        path.vertices.iter().enumerate().map(|(k, v)| if flip_sign(path.base_index + k as i64) { v.neg() } else { v.clone() }).collect();
    Ok(PathRep { mode: to, base_index: path.base_index, vertices })
}

/// Negates `vᵢ` for `i ≡ 2, 3 (mod 4)`.
pub fn skew_to_normalised(path: &PathRep) -> Result<PathRep> {
    convert(path, PathMode::SkewNormalised, PathMode::Normalised)
}

pub fn normalised_to_skew(path: &PathRep) -> Result<PathRep> {
    convert(path, PathMode::Normalised, PathMode::SkewNormalised)
}

/// Angles `aᵢ` indexed from `base_index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngleSeq {
    pub base_index: i64,
    pub values: Vec<EInt>,
}

impl AngleSeq {
    pub fn new(base_index: i64, values: Vec<EInt>) -> Self {
        AngleSeq { base_index, values }
    }

    pub fn get(&self, i: i64) -> Option<&EInt> {
        let k = i - self.base_index;
        if k < 0 {
            None
        } else {
            self.values.get(k as usize)
        }
    }

    pub fn at(&self, i: i64) -> Result<&EInt> {
        self.get(i).ok_or(Error::MissingAngle(i))
    }

    pub fn end_index(&self) -> i64 {
        self.base_index + self.values.len() as i64
    }

    pub fn indices(&self) -> std::ops::Range<i64> {
        self.base_index..self.end_index()
    }
}

/// The unique `a` with `v₊ = v₋ + a·vᵢ` at position `i` of a skew-normalised path.
pub fn t_angle(prev: &ProjPoint, cur: &ProjPoint, next: &ProjPoint, i: i64) -> Result<EInt> {
    if det2(prev, cur) != sign_pow(i - 1) {
        return Err(Error::PathContract(i - 1));
    }
    if det2(cur, next) != sign_pow(i) {
        return Err(Error::PathContract(i));
    }
    let a = &sign_pow(i - 1) * &det2(prev, next);
    let p = prev.p() + &(&a * cur.p());
    let q = prev.q() + &(&a * cur.q());
    if &p != next.p() || &q != next.q() {
        return Err(Error::PathContract(i));
    }
    Ok(a)
}

/// 𝒯-angles at every interior vertex of a skew-normalised path.
pub fn angle_sequence(path: &PathRep) -> Result<AngleSeq> {
    if path.mode != PathMode::SkewNormalised {
        return Err(Error::PathContract(path.base_index));
    }
    if path.len() < 3 {
        return Err(Error::TooShort { need: 3, got: path.len() });
    }
    let values = path
        .vertices
        .windows(3)
        .enumerate()
        .map(|(k, w)| t_angle(&w[0], &w[1], &w[2], path.base_index + 1 + k as i64))
        .collect::<Result<_>>()?;
    Ok(AngleSeq { base_index: path.base_index + 1, values })
}

fn step_forward(prev: &ProjPoint, cur: &ProjPoint, a: &EInt) -> ProjPoint {
    ProjPoint::new(prev.p() + &(a * cur.p()), prev.q() + &(a * cur.q())).expect("unimodular step is nonzero")
}

fn step_backward(next: &ProjPoint, cur: &ProjPoint, a: &EInt) -> ProjPoint {
    ProjPoint::new(next.p() - &(a * cur.p()), next.q() - &(a * cur.q())).expect("unimodular step is nonzero")
}

/// The skew-normalised path with `v_{b−1} = v0`, `v_b = v1` and angles from index `b`.
pub fn path_from_angles(v0: &ProjPoint, v1: &ProjPoint, angles: &AngleSeq) -> Result<PathRep> {
    let base = angles.base_index - 1;
    if det2(v0, v1) != sign_pow(base) {
        return Err(Error::PathContract(base));
    }
    let mut vertices = vec![v0.clone(), v1.clone()];
    for a in &angles.values {
        let n = vertices.len();
        let next = step_forward(&vertices[n - 2], &vertices[n - 1], a);
        vertices.push(next);
    }
    Ok(PathRep { mode: PathMode::SkewNormalised, base_index: base, vertices })
}

/// Skew-normalised path over indices `lo..=hi` with `v₀ = seed0`, `v₁ = seed1`,
/// extended forwards and backwards through `angles`.
pub fn skew_path_window(seed0: &ProjPoint, seed1: &ProjPoint, angles: &AngleSeq, lo: i64, hi: i64) -> Result<PathRep> {
    if det2(seed0, seed1) != EInt::one() {
        return Err(Error::PathContract(0));
    }
    let (lo0, hi0) = (lo.min(0), hi.max(1));
    let mut fwd = vec![seed0.clone(), seed1.clone()];
    for i in 1..hi0 {
        let a = angles.at(i)?;
        let k = fwd.len();
        let next = step_forward(&fwd[k - 2], &fwd[k - 1], a);
        fwd.push(next);
    }
    let mut bwd: Vec<ProjPoint> = Vec::new();
    let (mut next, mut cur) = (seed1.clone(), seed0.clone());
    for i in (lo0 + 1..=0).rev() {
        let prev = step_backward(&next, &cur, angles.at(i)?);
        bwd.push(prev.clone());
        next = std::mem::replace(&mut cur, prev);
    }
    bwd.reverse();
    bwd.extend(fwd);
    let start = (lo - lo0) as usize;
    let vertices = bwd[start..=(hi - lo0) as usize].to_vec();
    Ok(PathRep { mode: PathMode::SkewNormalised, base_index: lo, vertices })
}

/// `[a₁; a₂, …, aₙ] = a₁ + 1/(a₂ + 1/(…))` over ℚ(σ); fails if a partial value is 0.
pub fn nested_value(angles: &[EInt]) -> Result<EFrac> {
    let (last, rest) = angles.split_last().ok_or(Error::TooShort { need: 1, got: 0 })?;
    let mut x = EFrac::from_eint(last.clone());
    for a in rest.iter().rev() {
        x = EFrac::from_eint(a.clone()).add(&x.recip()?);
    }
    Ok(x)
}

/// The same value in Q̂(σ), with `1/0 = ∞` and `a + 1/∞ = a`.
pub fn nested_projective(angles: &[EInt]) -> ProjPoint {
    let (mut p, mut q) = (EInt::one(), EInt::zero());
    for a in angles.iter().rev() {
        let np = &(a * &p) + &q;
        q = std::mem::replace(&mut p, np);
    }
    ProjPoint::new(p, q).expect("continuants of adjacent lengths are coprime")
}

/// `q/p` for `p/q`.
pub fn reciprocal(f: &ProjPoint) -> ProjPoint {
    ProjPoint::new(f.q().clone(), f.p().clone()).expect("nonzero point")
}

/// Endpoint and nested value of a finite angle sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CfEval {
    /// `v_{n+2}` of the path from `1/0, 0/1` (reduced).
    pub endpoint: ProjPoint,
    /// `[a₁; …, a_{n+1}]`, absent when a division by zero occurs.
    pub nested: Option<EFrac>,
    /// The nested value as a point of Q̂(σ) (reduced).
    pub nested_projective: ProjPoint,
    /// `endpoint = 1/[a₁; …, a_{n+1}]`.
    pub relation_holds: bool,
}

pub fn cf_eval(angles: &[EInt]) -> Result<CfEval> {
    let seq = AngleSeq::new(1, angles.to_vec());
    let path = path_from_angles(&ProjPoint::infinity(), &ProjPoint::int(0, 0), &seq)?;
    let endpoint = path.vertices.last().expect("nonempty").reduce();
    let nested_projective = nested_projective(angles).reduce();
    Ok(CfEval {
        relation_holds: endpoint.point_eq(&reciprocal(&nested_projective)),
        endpoint,
        nested: nested_value(angles).ok(),
        nested_projective,
    })
}

/// First `(j, l)` with the sub-fraction `[a_{j+1}; …, a_{l−1}] = 0`, with the path
/// from `1/0, 0/1` indexed from 0 and angles from 1.
pub fn zero_subfraction(angles: &[EInt]) -> Option<(i64, i64)> {
    let n = angles.len() as i64 + 2;
    for l in 2..n {
        for j in 0..=l - 2 {
            let sub = &angles[j as usize..(l - 1) as usize];
            let v = nested_projective(sub);
            if v.p().is_zero() {
                return Some((j, l));
            }
        }
    }
    None
}

/// `det2(v0, v2)/det2(v0, v1)` as an exact element of ℚ(σ).
pub fn t_angle_general(v0: &ProjPoint, v1: &ProjPoint, v2: &ProjPoint) -> Result<EFrac> {
    let d01 = det2(v0, v1);
    let d02 = det2(v0, v2);
    if d01.is_zero() {
        return Err(Error::Coincident(v0.to_string()));
    }
    if d02.is_zero() {
        return Err(Error::Coincident(v2.to_string()));
    }
    EFrac::new(d02, d01)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcyclicReport {
    /// `x₁₃, x₂₄, x₁₂, x₃₄, x₂₃, x₁₄`.
    pub x: [f64; 6],
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub concyclic: bool,
    pub cyclic_order: bool,
}

/// Evaluates `x₁₃x₂₄ = x₁₂x₃₄ + x₂₃x₁₄` without checking the configuration.
pub fn concyclic_ptolemy_residual(v: &[ProjPoint; 4], v0: &ProjPoint) -> Result<ConcyclicReport> {
    let pts: Vec<ProjPoint> = v.iter().map(|p| p.reduce()).collect();
    let v0 = v0.reduce();
    for i in 0..4 {
        if pts[i].point_eq(&v0) {
            return Err(Error::Coincident(v0.to_string()));
        }
        for j in i + 1..4 {
            if pts[i].point_eq(&pts[j]) {
                return Err(Error::Coincident(pts[i].to_string()));
            }
        }
    }
    let abs = |x: &EInt| -> f64 { crate::eisenstein::norm(x).to_f64().unwrap_or(f64::INFINITY).sqrt() };
    let d = |i: usize, j: usize| det2(&pts[i], &pts[j]);
    let d0: Vec<f64> = pts.iter().map(|p| abs(&det2(p, &v0))).collect();
    let x = |i: usize, j: usize| abs(&d(i, j)) / (d0[i] * d0[j]).sqrt();
    let xs = [x(0, 2), x(1, 3), x(0, 1), x(2, 3), x(1, 2), x(0, 3)];
    let lhs = xs[0] * xs[1];
    let rhs = xs[2] * xs[3] + xs[4] * xs[5];
    // cross ratios r₁ = d₁₂d₃₄/(d₁₃d₂₄), r₂ = d₁₄d₂₃/(d₁₃d₂₄); concyclic iff real
    let den = (&d(0, 2) * &d(1, 3)).conj();
    let r1 = &(&d(0, 1) * &d(2, 3)) * &den;
    let r2 = &(&d(0, 3) * &d(1, 2)) * &den;
    let concyclic = r1.b.is_zero() && r2.b.is_zero();
    let cyclic_order = concyclic && r1.a.is_positive() && r2.a.is_positive();
    Ok(ConcyclicReport { x: xs, lhs, rhs, residual: (lhs - rhs).abs() / lhs.abs().max(rhs.abs()), concyclic, cyclic_order })
}

/// Ptolemy relation for four concyclic points in cyclic order, decorated from `v0`.
pub fn verify_concyclic_ptolemy(v: &[ProjPoint; 4], v0: &ProjPoint) -> Result<ConcyclicReport> {
    let r = concyclic_ptolemy_residual(v, v0)?;
    if !r.concyclic {
        return Err(Error::NotConcyclic);
    }
    if !r.cyclic_order {
        return Err(Error::NotCyclicOrder);
    }
    Ok(r)
}
