//! λ-lengths: exact via det-lengths, numeric via horospheres in upper
//! half-space, and the relations among them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::eisenstein::{det2, EInt, ProjPoint, UniMat};
use crate::error::{Error, Result};
use crate::farey3d::{det_length_sq, is_fundamental_tetrahedron, reflect_apex, Face, Tetra};

/// A horosphere: a Euclidean sphere tangent to ℂ at `center`, or a horizontal
/// plane when `center` is `None` (the point ∞). `size` is the radius or height.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHorosphere")]
pub struct Horosphere {
    pub center: Option<[f64; 2]>,
    pub size: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHorosphere {
    center: Option<[f64; 2]>,
    size: f64,
}

impl TryFrom<RawHorosphere> for Horosphere {
    type Error = Error;
    fn try_from(r: RawHorosphere) -> Result<Self> {
        Horosphere::new(r.center.map(|[x, y]| Complex64::new(x, y)), r.size)
    }
}

impl Horosphere {
    pub fn new(center: Option<Complex64>, size: f64) -> Result<Self> {
        if !size.is_finite() || size <= 0.0 {
            return Err(Error::BadHorosphere);
        }
        Ok(Horosphere { center: center.map(|z| [z.re, z.im]), size })
    }

    pub fn center_complex(&self) -> Option<Complex64> {
        self.center.map(|[re, im]| Complex64::new(re, im))
    }

    /// Curvature `1/size` of a sphere, 0 for a plane.
    pub fn curvature(&self) -> f64 {
        if self.center.is_some() {
            1.0 / self.size
        } else {
            0.0
        }
    }
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Radius `1/(2·norm(q))` at `p/q`, plane at height 1 at ∞.
pub fn standard_horosphere(f: &ProjPoint) -> Result<Horosphere> {
    f.require_irreducible()?;
    match f.to_complex() {
        None => Horosphere::new(None, 1.0),
        Some(z) => Horosphere::new(Some(z), 0.5 / to_f64(&f.q().norm())),
    }
}

/// `exp(d/2)` for the signed distance between two horospheres.
pub fn lambda_numeric(a: &Horosphere, b: &Horosphere) -> Result<f64> {
    match (a.center_complex(), b.center_complex()) {
        (None, None) => Err(Error::Coincident("∞".into())),
        (None, Some(_)) => Ok((a.size / (2.0 * b.size)).sqrt()),
        (Some(_), None) => Ok((b.size / (2.0 * a.size)).sqrt()),
        (Some(z), Some(w)) => {
            let d = (z - w).norm();
            if d == 0.0 {
                return Err(Error::Coincident(format!("{z}")));
            }
            Ok(d / (2.0 * (a.size * b.size).sqrt()))
        }
    }
}

/// λ between two points with their standard horospheres.
pub fn lambda_standard(u: &ProjPoint, v: &ProjPoint) -> Result<f64> {
    lambda_numeric(&standard_horosphere(u)?, &standard_horosphere(v)?)
}

fn rel_residual(l: f64, r: f64) -> f64 {
    let scale = l.abs().max(r.abs());
    if scale == 0.0 {
        0.0
    } else {
        (l - r).abs() / scale
    }
}

/// Exact integers rendered with the JSON safe-range rule.
fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::eisenstein::big_to_json(x, s)
}

pub(crate) fn ser_bigs<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&crate::eisenstein::JsonBig(x))?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaDetReport {
    pub det_length_sq: u64,
    pub lambda: f64,
    pub det_length: f64,
    pub residual: f64,
}

/// Compares the numeric λ-length with `√(det_length_sq)`.
pub fn verify_lambda_det(u: &ProjPoint, v: &ProjPoint) -> Result<LambdaDetReport> {
    let l2 = det_length_sq(u, v)?;
    if l2.is_zero() {
        return Err(Error::Coincident(u.to_string()));
    }
    let lambda = lambda_standard(u, v)?;
    let det_length = to_f64(&l2).sqrt();
    Ok(LambdaDetReport { det_length_sq: l2.to_u64().unwrap_or(u64::MAX), lambda, det_length, residual: rel_residual(lambda, det_length) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PtolemyReport {
    #[serde(serialize_with = "ser_bigs")]
    pub b: Vec<BigInt>,
    #[serde(serialize_with = "ser_big")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigInt,
    pub equal: bool,
    pub float_lhs: f64,
    pub float_rhs: f64,
    pub residual: f64,
}

/// `∑ bᵢ² = ∑_{i<j} bᵢbⱼ` with `bᵢ = l(X, Aᵢ)²`, exactly and via horospheres.
pub fn verify_tetra_ptolemy(tetra: &Tetra, x: &ProjPoint) -> Result<PtolemyReport> {
    if !is_fundamental_tetrahedron(tetra)? {
        return Err(Error::NotTetrahedron);
    }
    if tetra.contains(x) {
        return Err(Error::Coincident(x.to_string()));
    }
    let x = x.reduce();
    let b: Vec<BigInt> = tetra.0.iter().map(|a| det_length_sq(&x, &a.reduce())).collect::<Result<_>>()?;
    let lhs: BigInt = b.iter().map(|v| v * v).sum();
    let rhs: BigInt = pairs(4).map(|(i, j)| &b[i] * &b[j]).sum();
    let hx = standard_horosphere(&x)?;
    let lam: Vec<f64> = tetra.0.iter().map(|a| lambda_numeric(&hx, &standard_horosphere(&a.reduce())?)).collect::<Result<_>>()?;
    let float_lhs: f64 = lam.iter().map(|l| l.powi(4)).sum();
    let float_rhs: f64 = pairs(4).map(|(i, j)| (lam[i] * lam[j]).powi(2)).sum();
    Ok(PtolemyReport { equal: lhs == rhs, b, lhs, rhs, float_lhs, float_rhs, residual: rel_residual(float_lhs, float_rhs) })
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// The other root `b₁ + b₂ + b₃ − b₄` of the tetrahedral quadratic.
pub fn quadratic_partner(face: [&BigInt; 3], apex: &BigInt) -> BigInt {
    face[0] + face[1] + face[2] - apex
}

/// The 12 undirected Hamiltonian cycles of K₅, each as a vertex order starting at 0.
pub fn five_cycles() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(12);
    let rest = [1, 2, 3, 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut seen = [false; 4];
                    if idx.iter().any(|&k| std::mem::replace(&mut seen[k], true)) {
                        continue;
                    }
                    let p = idx.map(|k| rest[k]);
                    if p[0] < p[3] {
                        out.push([0, p[0], p[1], p[2], p[3]]);
                    }
                }
            }
        }
    }
    out
}

/// Both sides of the five-point relation for squared λ-lengths `w[i][j]`.
pub fn five_point_sides<T>(w: &[[T; 5]; 5]) -> (T, T)
where
    T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T>,
{
    let mut lhs = T::zero();
    for (i, j) in pairs(5) {
        let c: Vec<usize> = (0..5).filter(|&k| k != i && k != j).collect();
        let (k, l, m) = (c[0], c[1], c[2]);
        let term = w[i][j].clone() * &w[i][j] * &w[k][l] * &w[l][m] * &w[m][k];
        lhs = lhs + term;
    }
    let mut rhs = T::zero();
    for cyc in five_cycles() {
        let mut term = w[cyc[0]][cyc[1]].clone();
        for t in 1..5 {
            term = term * &w[cyc[t]][cyc[(t + 1) % 5]];
        }
        rhs = rhs + term;
    }
    (lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FivePointReport {
    #[serde(serialize_with = "ser_big")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigInt,
    pub equal: bool,
    pub float_lhs: f64,
    pub float_rhs: f64,
    pub residual: f64,
}

fn ensure_distinct(pts: &[ProjPoint]) -> Result<()> {
    for (i, j) in pairs(pts.len()) {
        if pts[i].point_eq(&pts[j]) {
            return Err(Error::Coincident(pts[i].to_string()));
        }
    }
    Ok(())
}

/// Exact five-point relation with standard horospheres, plus the float evaluation.
pub fn verify_five_point(points: &[ProjPoint; 5]) -> Result<FivePointReport> {
    ensure_distinct(points)?;
    let pts: Vec<ProjPoint> = points.iter().map(|p| p.reduce()).collect();
    let mut w: [[BigInt; 5]; 5] = Default::default();
    for (i, j) in pairs(5) {
        w[i][j] = det_length_sq(&pts[i], &pts[j])?;
        w[j][i] = w[i][j].clone();
    }
    let (lhs, rhs) = five_point_sides(&w);
    let horos: Vec<Horosphere> = pts.iter().map(standard_horosphere).collect::<Result<_>>()?;
    let (float_lhs, float_rhs, residual) = five_point_float(&horos.try_into().expect("five horospheres"))?;
    Ok(FivePointReport { equal: lhs == rhs, lhs, rhs, float_lhs, float_rhs, residual })
}

/// Float five-point relation for arbitrary decorated points.
pub fn five_point_float(h: &[Horosphere; 5]) -> Result<(f64, f64, f64)> {
    let mut w = [[0.0f64; 5]; 5];
    for (i, j) in pairs(5) {
        let l = lambda_numeric(&h[i], &h[j])?;
        w[i][j] = l * l;
        w[j][i] = w[i][j];
    }
    let (l, r) = five_point_sides(&w);
    Ok((l, r, rel_residual(l, r)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SoddyReport {
    #[serde(serialize_with = "ser_bigs")]
    pub curvatures: Vec<BigInt>,
    #[serde(serialize_with = "ser_big")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigInt,
    pub equal: bool,
    pub float_lhs: f64,
    pub float_rhs: f64,
    pub residual: f64,
}

/// `∑_{i<j} kᵢkⱼ` and `∑ kᵢ²` for a list of curvatures (the boundary plane contributes 0).
pub fn soddy_sides(k: &[f64]) -> (f64, f64) {
    let lhs = pairs(k.len()).map(|(i, j)| k[i] * k[j]).sum();
    let rhs = k.iter().map(|x| x * x).sum();
    (lhs, rhs)
}

/// Reduced three-dimensional Soddy–Gosset identity on the standard horospheres of a tetrahedron.
pub fn verify_soddy_gosset(tetra: &Tetra) -> Result<SoddyReport> {
    if !is_fundamental_tetrahedron(tetra)? {
        return Err(Error::NotTetrahedron);
    }
    let pts: Vec<ProjPoint> = tetra.0.iter().map(|p| p.reduce()).collect();
    let curvatures: Vec<BigInt> = pts.iter().map(|p| p.q().norm() * 2).collect();
    let lhs: BigInt = pairs(4).map(|(i, j)| &curvatures[i] * &curvatures[j]).sum();
    let rhs: BigInt = curvatures.iter().map(|k| k * k).sum();
    let k: Vec<f64> = pts.iter().map(|p| standard_horosphere(p).map(|h| h.curvature())).collect::<Result<_>>()?;
    let (float_lhs, float_rhs) = soddy_sides(&k);
    Ok(SoddyReport { equal: lhs == rhs, curvatures, lhs, rhs, float_lhs, float_rhs, residual: rel_residual(float_lhs, float_rhs) })
}

/// One face crossing: the tetrahedron loses `dropped` and gains `added` across `face`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkStep {
    pub face: Face,
    pub dropped: ProjPoint,
    pub added: ProjPoint,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Walk {
    pub source: ProjPoint,
    pub target: ProjPoint,
    pub tetrahedra: Vec<Tetra>,
    pub steps: Vec<WalkStep>,
}

impl Walk {
    /// The source, the rest of the first tetrahedron, then each added vertex.
    pub fn vertex_stream(&self) -> Vec<ProjPoint> {
        let first = &self.tetrahedra[0];
        let mut out = vec![self.source.clone()];
        out.extend(first.0.iter().filter(|v| !v.point_eq(&self.source)).cloned());
        out.extend(self.steps.iter().map(|s| s.added.clone()));
        out
    }
}

/// A matrix in SL₂(ℤ[σ]) sending ∞ to `x`.
pub fn matrix_to(x: &ProjPoint) -> Result<UniMat> {
    let x = x.reduce();
    let (g, s, t) = EInt::ext_gcd(x.p(), x.q())?;
    let gi = g.unit_inverse().ok_or_else(|| Error::Reducible(x.to_string()))?;
    UniMat::sl2([x.p().clone(), -(&t * &gi), x.q().clone(), &s * &gi])
}

const GAP_TOL: f64 = 1e-6;
const CIRCLE_TOL: f64 = 1e-9;

fn circumcircle(a: Complex64, b: Complex64, c: Complex64) -> Option<(Complex64, f64)> {
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    let scale = (b - a).norm() * (c - a).norm();
    if d.abs() <= 1e-12 * scale {
        return None;
    }
    let (a2, b2, c2) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let ux = (a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d;
    let uy = (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d;
    let o = Complex64::new(ux, uy);
    Some((o, (a - o).norm()))
}

/// Exact test: the cross-ratio of four distinct points is real.
fn concyclic(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, y: &ProjPoint) -> bool {
    let num = &det2(y, a) * &det2(b, c);
    let den = &det2(y, c) * &det2(b, a);
    (&num * &den.conj()).is_rational()
}

/// Tetrahedra crossed by the geodesic from `x` to `y`, in order.
///
/// Works in the frame where `x = ∞`: the geodesic is then the vertical line over
/// `y`, and each step exits through the face whose hemisphere it meets highest.
pub fn geodesic_walk(x: &ProjPoint, y: &ProjPoint, max_steps: usize) -> Result<Walk> {
    let (x, y) = (x.reduce(), y.reduce());
    if x.point_eq(&y) {
        return Err(Error::Coincident(x.to_string()));
    }
    let m = matrix_to(&x)?;
    let a = m.inverse();
    let yf = a.apply(&y).reduce();
    let back = |f: &ProjPoint| m.apply(f).reduce();
    let lattice = |i: &BigInt, j: &BigInt| ProjPoint::from_eint(EInt { a: i.clone(), b: j.clone() });

    if let Some(z) = yf.as_eint() {
        let t = [
            ProjPoint::infinity(),
            ProjPoint::from_eint(z.clone()),
            ProjPoint::from_eint(&z + &EInt::one()),
            ProjPoint::from_eint(&z + &EInt::sigma()),
        ];
        return Ok(Walk { source: x, target: y, tetrahedra: vec![Tetra(t.map(|f| back(&f)))], steps: vec![] });
    }
    let (un, vn, n) = yf.rational_coords().expect("y is finite in the frame");
    let (i, ru) = un.div_mod_floor(&n);
    let (j, rv) = vn.div_mod_floor(&n);
    if ru.is_zero() || rv.is_zero() || (&ru + &rv) == n {
        return Err(Error::CoplanarGeodesic);
    }
    let one = BigInt::from(1);
    let tri = if &ru + &rv < n {
        [lattice(&i, &j), lattice(&(&i + &one), &j), lattice(&i, &(&j + &one))]
    } else {
        [lattice(&(&i + &one), &j), lattice(&i, &(&j + &one)), lattice(&(&i + &one), &(&j + &one))]
    };
    let [t1, t2, t3] = tri;
    let mut cur = [ProjPoint::infinity(), t1, t2, t3];
    let yc = yf.to_complex().expect("finite");
    let mut tetrahedra = vec![Tetra(cur.clone().map(|f| back(&f)))];
    let mut steps = Vec::new();
    let mut entry: Option<usize> = None;

    while !cur.iter().any(|v| v.point_eq(&yf)) {
        if steps.len() >= max_steps {
            return Err(Error::StepBudget(max_steps));
        }
        let mut cands: Vec<(f64, usize)> = Vec::new();
        for k in 0..4 {
            if Some(k) == entry {
                continue;
            }
            let face: Vec<&ProjPoint> = (0..4).filter(|&t| t != k).map(|t| &cur[t]).collect();
            let pts: Option<Vec<Complex64>> = face.iter().map(|f| f.to_complex()).collect();
            let Some(pts) = pts else { continue };
            let Some((o, r)) = circumcircle(pts[0], pts[1], pts[2]) else { continue };
            if concyclic(face[0], face[1], face[2], &yf) {
                // The hemisphere meets the geodesic only at its endpoint.
                continue;
            }
            let d = (yc - o).norm();
            if (d - r).abs() < CIRCLE_TOL * r {
                return Err(Error::AmbiguousCrossing((d - r).abs()));
            }
            if d >= r {
                continue;
            }
            if let Some(op) = cur[k].to_complex() {
                if (op - o).norm() < r {
                    continue;
                }
            }
            cands.push(((r * r - d * d).sqrt(), k));
        }
        cands.sort_by(|p, q| q.0.total_cmp(&p.0));
        let Some(&(h, k)) = cands.first() else {
            return Err(Error::NoExit(steps.len()));
        };
        if let Some(&(h2, _)) = cands.get(1) {
            if h - h2 < GAP_TOL * h {
                return Err(Error::AmbiguousCrossing(h - h2));
            }
        }
        let face_pts: Vec<ProjPoint> = (0..4).filter(|&t| t != k).map(|t| cur[t].clone()).collect();
        let face = Face([face_pts[0].clone(), face_pts[1].clone(), face_pts[2].clone()]);
        let added = reflect_apex(&face, &cur[k])?.reduce();
        steps.push(WalkStep { face: Face(face.0.clone().map(|f| back(&f))), dropped: back(&cur[k]), added: back(&added) });
        cur[k] = added;
        entry = Some(k);
        tetrahedra.push(Tetra(cur.clone().map(|f| back(&f))));
    }
    Ok(Walk { source: x, target: y, tetrahedra, steps })
}

/// Indices into the vertex stream for one face crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BStep {
    pub dropped: usize,
    pub added: usize,
    pub face: [usize; 3],
}

/// Squared λ-lengths from the source to the walk's vertex stream.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BSequence {
    #[serde(serialize_with = "ser_bigs")]
    pub values: Vec<BigInt>,
    pub steps: Vec<BStep>,
}

impl BSequence {
    /// `b₁ = b₂ = b₃ = 1, b₄ = 3`.
    pub fn starts_1113(&self) -> bool {
        let want: [BigInt; 4] = [1.into(), 1.into(), 1.into(), 3.into()];
        self.values.len() >= 5 && self.values[1..5] == want
    }

    /// First `i` where `bᵢ + bᵢ₊₄ = bᵢ₊₁ + bᵢ₊₂ + bᵢ₊₃` fails on the stream order.
    pub fn lag4_violation(&self) -> Option<usize> {
        let b = &self.values;
        (0..b.len().saturating_sub(4)).find(|&i| &b[i] + &b[i + 4] != &b[i + 1] + &b[i + 2] + &b[i + 3])
    }

    /// First `i` with `bᵢ ≥ bᵢ₊₄` on the stream order.
    pub fn lag4_nonincrease(&self) -> Option<usize> {
        let b = &self.values;
        (0..b.len().saturating_sub(4)).find(|&i| b[i] >= b[i + 4])
    }
}

/// Computes the b-sequence of a walk and checks, at every crossing,
/// `b(dropped) + b(added) = ∑ b(face)` and `b(added) > b(dropped)`.
pub fn b_sequence(x: &ProjPoint, walk: &Walk) -> Result<BSequence> {
    let x = x.reduce();
    let stream = walk.vertex_stream();
    let values: Vec<BigInt> = stream.iter().map(|v| det_length_sq(&x, v)).collect::<Result<_>>()?;
    let mut live: Vec<usize> = (0..4.min(stream.len())).collect();
    let mut steps = Vec::with_capacity(walk.steps.len());
    for (s, step) in walk.steps.iter().enumerate() {
        let find = |f: &ProjPoint, live: &[usize]| live.iter().copied().find(|&k| stream[k].point_eq(f));
        let dropped = find(&step.dropped, &live).ok_or(Error::BRelation(s))?;
        let face: Vec<usize> = step.face.0.iter().map(|f| find(f, &live)).collect::<Option<_>>().ok_or(Error::BRelation(s))?;
        let added = 4 + s;
        let sum = &values[face[0]] + &values[face[1]] + &values[face[2]];
        if &values[dropped] + &values[added] != sum || values[added] <= values[dropped] {
            return Err(Error::BRelation(s));
        }
        live.retain(|&k| k != dropped);
        live.push(added);
        steps.push(BStep { dropped, added, face: [face[0], face[1], face[2]] });
    }
    if values.iter().skip(1).any(|v| v <= &BigInt::zero()) {
        return Err(Error::BRelation(0));
    }
    Ok(BSequence { values, steps })
}
