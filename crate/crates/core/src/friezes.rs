//! Closed paths in 𝒯, the friezes they generate, and a bounded enumeration of
//! closed non-self-intersecting paths up to symmetry.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{EInt, ProjPoint, UniMat};
use crate::error::{Error, Result};
use crate::paths::{angle_sequence, normalise_path, path_from_angles, skew_normalise, AngleSeq, PathMode, PathRep};
use crate::tilings::{check_window, tiling_from_paths, TilingMode, TilingWindow, WindowSpec};

pub const MIN_PERIOD: usize = 4;
pub const MAX_PERIOD: usize = 10;

/// A path with `v_m = v₀` and `v_{m+1} = v₁` as points. `path` is the
/// skew-normalised lift `v₀ … v_{m+1}` and `angles` holds `a₁ … a_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawClosed")]
pub struct ClosedPath {
    pub period: usize,
    pub path: PathRep,
    pub angles: AngleSeq,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClosed {
    path: PathRep,
    #[serde(default)]
    period: Option<usize>,
    #[serde(default)]
    angles: Option<AngleSeq>,
}

impl TryFrom<RawClosed> for ClosedPath {
    type Error = Error;
    fn try_from(r: RawClosed) -> Result<Self> {
        let c = ClosedPath::from_path(&r.path)?;
        if r.period.is_some_and(|m| m != c.period) {
            return Err(Error::NotClosed);
        }
        if r.angles.as_ref().is_some_and(|a| a != &c.angles) {
            return Err(Error::PathContract(1));
        }
        Ok(c)
    }
}

impl ClosedPath {
    /// From one period `v₀ … v_{m−1}` of points.
    pub fn from_points(points: &[ProjPoint]) -> Result<Self> {
        let m = points.len();
        if m < MIN_PERIOD {
            return Err(Error::PeriodTooSmall(m));
        }
        Self::lift(points, &points[0].reduce())
    }

    fn lift(points: &[ProjPoint], seed: &ProjPoint) -> Result<Self> {
        let m = points.len();
        let mut cyc = points.to_vec();
        cyc.push(points[0].clone());
        cyc.push(points[1].clone());
        let path = skew_normalise(&cyc, seed)?;
        let angles = angle_sequence(&path)?;
        Ok(ClosedPath { period: m, path, angles })
    }

    /// From a path listing `v₀ … v_m` or `v₀ … v_{m+1}`. A skew-normalised input
    /// starting at index 0 keeps its lift.
    pub fn from_path(p: &PathRep) -> Result<Self> {
        p.validate()?;
        let v = &p.vertices;
        let n = v.len();
        let m = if n >= 6 && v[n - 1].point_eq(&v[1]) && v[n - 2].point_eq(&v[0]) {
            n - 2
        } else if n >= 5 && v[n - 1].point_eq(&v[0]) {
            n - 1
        } else if n >= 2 && v[n - 1].point_eq(&v[0]) {
            return Err(Error::PeriodTooSmall(n - 1));
        } else {
            return Err(Error::NotClosed);
        };
        let seed = if p.mode == PathMode::SkewNormalised && p.base_index == 0 { v[0].clone() } else { v[0].reduce() };
        Self::lift(&v[..m], &seed)
    }

    /// From angles `a₁ … a_m` of a skew-normalised lift starting `1/0, 0/1`.
    pub fn from_angles(angles: &[EInt]) -> Result<Self> {
        let m = angles.len();
        if m < MIN_PERIOD {
            return Err(Error::PeriodTooSmall(m));
        }
        let a = AngleSeq::new(1, angles.to_vec());
        let path = path_from_angles(&ProjPoint::infinity(), &ProjPoint::int(0, 0), &a)?;
        let v = &path.vertices;
        if !v[m].point_eq(&v[0]) || !v[m + 1].point_eq(&v[1]) {
            return Err(Error::NotClosed);
        }
        Ok(ClosedPath { period: m, path, angles: a })
    }

    /// One period of points.
    pub fn points(&self) -> &[ProjPoint] {
        &self.path.vertices[..self.period]
    }

    /// First pair `i < j` within a period naming the same point.
    pub fn self_intersection(&self) -> Option<(i64, i64)> {
        let v = self.points();
        (0..v.len()).flat_map(|j| (0..j).map(move |i| (i, j))).find(|&(i, j)| v[i].point_eq(&v[j])).map(|(i, j)| (i as i64, j as i64))
    }

    pub fn is_simple(&self) -> bool {
        self.self_intersection().is_none()
    }
}

/// The det-mode tiling of a closed path against itself on rows `0..=m`,
/// columns `0..=2m`, together with its frieze band `2 ≤ j − i ≤ m − 2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Frieze {
    pub period: usize,
    /// Number of nontrivial diagonals, `m − 3`.
    pub height: usize,
    pub window: TilingWindow,
    /// `band[i][d] = m_{i, i+2+d}` for `0 ≤ i < m`.
    pub band: Vec<Vec<EInt>>,
    pub zero_free: bool,
    pub zero_witness: Option<[i64; 2]>,
    /// All band entries lie in ℤ.
    pub integer: bool,
}

pub fn frieze_from_closed_path(c: &ClosedPath) -> Result<Frieze> {
    let m = c.period;
    if m < MIN_PERIOD {
        return Err(Error::PeriodTooSmall(m));
    }
    let pts: Vec<ProjPoint> = (0..=2 * m).map(|i| c.points()[i % m].clone()).collect();
    let n = normalise_path(&pts, &pts[0].reduce())?;
    let mut window = tiling_from_paths(&n, &n, TilingMode::Det, Some(WindowSpec::new(0, m + 1, 0, 2 * m + 1)))?;
    window.generators = None;
    debug_assert!(check_window(&window)?.ok());
    let band: Vec<Vec<EInt>> =
        (0..m as i64).map(|i| (i + 2..=i + m as i64 - 2).map(|j| window.get(i, j).expect("inside window").clone()).collect()).collect();
    let zero_witness =
        band.iter().enumerate().find_map(|(i, row)| row.iter().position(|x| x.is_zero()).map(|d| [i as i64, (i + 2 + d) as i64]));
    let integer = band.iter().flatten().all(|x| x.is_rational());
    Ok(Frieze { period: m, height: m - 3, window, band, zero_free: zero_witness.is_none(), zero_witness, integer })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiddityReport {
    pub period: usize,
    /// `(m − 2)²`, the bound on each norm.
    pub bound: u64,
    #[serde(serialize_with = "crate::lambda::ser_bigs")]
    pub norms: Vec<BigInt>,
    pub holds: bool,
    /// Index `i` of the first `aᵢ` over the bound.
    pub first_violation: Option<i64>,
}

/// `norm(aᵢ) ≤ (m − 2)²` for every angle of a non-self-intersecting closed path.
pub fn quiddity_bound_check(c: &ClosedPath) -> Result<QuiddityReport> {
    if let Some((i, j)) = c.self_intersection() {
        return Err(Error::SelfIntersecting(i, j));
    }
    let bound = ((c.period - 2) * (c.period - 2)) as u64;
    let norms: Vec<BigInt> = c.angles.values.iter().map(EInt::norm).collect();
    let first_violation = norms.iter().position(|x| *x > BigInt::from(bound)).map(|k| c.angles.base_index + k as i64);
    Ok(QuiddityReport { period: c.period, bound, norms, holds: first_violation.is_none(), first_violation })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// PGL₂(ℤ[σ]) together with complex conjugation.
    Full,
    OrientationPreserving,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumOptions {
    pub symmetry: Symmetry,
    /// Use the quiddity bound `|aᵢ| ≤ m − 2`. Otherwise the search admits
    /// `|aᵢ| ≤ 2(m − 2)`, which checks that the bound loses nothing.
    pub pruned: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { symmetry: Symmetry::Full, pruned: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub period: usize,
    pub options: EnumOptions,
    /// Closed paths found with `v₀ = 1/0`, `v₁ = 0/1` and `a₁` of maximal norm.
    pub raw_count: usize,
    pub nodes: u64,
    pub classes: Vec<ClosedPath>,
}

type Z = (i128, i128);

fn zmul(x: Z, y: Z) -> Z {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0 + x.1 * y.1)
}

fn zadd(x: Z, y: Z) -> Z {
    (x.0 + y.0, x.1 + y.1)
}

fn znorm(x: Z) -> i128 {
    x.0 * x.0 + x.0 * x.1 + x.1 * x.1
}

/// A raw search hit: angles `a₁ … a_m` and one period of the skew lift.
struct Found {
    angles: Vec<Z>,
    verts: Vec<(Z, Z)>,
}

struct Search<'a> {
    m: usize,
    elems: &'a [Z],
    /// `den_bound[d]²` bounds `norm(q_k)` when `d = m − k` steps remain.
    den_bound: Vec<i128>,
    limit: usize,
    found: &'a AtomicUsize,
    abort: &'a AtomicBool,
}

impl Search<'_> {
    fn run(&self, vs: &mut Vec<(Z, Z)>, angs: &mut Vec<Z>, cap: i128, out: &mut Vec<Found>, nodes: &mut u64) {
        *nodes += 1;
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        let k = vs.len() - 1;
        let m = self.m;
        if k == m {
            let (pm, pm1) = (vs[m].0, vs[m - 1].0);
            // p_m is a unit: its inverse is its conjugate
            let inv = (pm.0 + pm.1, -pm.1);
            let am = zmul((-pm1.0, -pm1.1), inv);
            if znorm(am) > cap {
                return;
            }
            let mut angles = angs.clone();
            angles.push(am);
            out.push(Found { angles, verts: vs[..m].to_vec() });
            if self.found.fetch_add(1, Ordering::Relaxed) + 1 > self.limit {
                self.abort.store(true, Ordering::Relaxed);
            }
            return;
        }
        for &a in self.elems {
            if k >= 2 && znorm(a) > cap {
                break;
            }
            self.step(vs, angs, cap, a, out, nodes);
        }
    }

    /// Extends by angle `a` at the last vertex if the constraints allow it.
    fn step(&self, vs: &mut Vec<(Z, Z)>, angs: &mut Vec<Z>, cap: i128, a: Z, out: &mut Vec<Found>, nodes: &mut u64) {
        let k = vs.len() - 1;
        let m = self.m;
        let (pp, qp) = vs[k - 1];
        let (pc, qc) = vs[k];
        let nv = (zadd(pp, zmul(a, pc)), zadd(qp, zmul(a, qc)));
        let q = nv.1;
        if k + 1 < m {
            if q == (0, 0) || znorm(q) > self.den_bound[m - k - 1] {
                return;
            }
            // v_{k+1} must not revisit v₁ … v_k
            if vs[1..].iter().any(|w| zmul(nv.0, w.1) == zmul(nv.1, w.0)) {
                return;
            }
        } else if q != (0, 0) {
            return;
        }
        vs.push(nv);
        angs.push(a);
        let next_cap = if k == 1 { znorm(a) } else { cap };
        self.run(vs, angs, next_cap, out, nodes);
        vs.pop();
        angs.pop();
    }
}

fn elements(max_norm: i128) -> Vec<Z> {
    let r = (2.0 * (max_norm as f64).sqrt()) as i128 + 2;
    let mut out: Vec<Z> = (-r..=r).flat_map(|a| (-r..=r).map(move |b| (a, b))).filter(|&x| znorm(x) <= max_norm).collect();
    out.sort_by_key(|&x| (znorm(x), x));
    out
}

const UNITS: [Z; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn zconj(x: Z) -> Z {
    (x.0 + x.1, -x.1)
}

/// Representative of `p/q` with `q` in the sector `arg ∈ [0, π/3)`, or `1/0`.
fn canon_point(p: Z, q: Z) -> (Z, Z) {
    if q == (0, 0) {
        return ((1, 0), (0, 0));
    }
    let u = UNITS.iter().copied().find(|&u| {
        let w = zmul(u, q);
        w.0 > 0 && w.1 >= 0
    });
    let u = u.expect("some unit rotates q into the first sector");
    (zmul(u, p), zmul(u, q))
}

/// Lexicographically least image of the vertex cycle over rotations,
/// reversal and the symmetry group, after sending one edge to `(∞, 0)`.
fn symmetry_key_z(points: &[(Z, Z)], sym: Symmetry) -> Vec<(Z, Z)> {
    let m = points.len();
    let mut best: Option<Vec<(Z, Z)>> = None;
    let mut cand = Vec::with_capacity(m);
    for r in 0..m {
        for dir in [1i64, -1] {
            let at = |t: usize| points[(r as i64 + dir * t as i64).rem_euclid(m as i64) as usize];
            let ((p0, q0), (p1, q1)) = (at(0), at(1));
            // inverse of the column matrix (p0 p1; q0 q1); its determinant is a unit
            let di = zconj(zadd(zmul(p0, q1), zmul((-p1.0, -p1.1), q0)));
            let img: Vec<(Z, Z)> = (0..m)
                .map(|t| {
                    let (p, q) = at(t);
                    let x = zmul(di, zadd(zmul(q1, p), zmul((-p1.0, -p1.1), q)));
                    let y = zmul(di, zadd(zmul((-q0.0, -q0.1), p), zmul(p0, q)));
                    (x, y)
                })
                .collect();
            for u in UNITS {
                for conj in [false, true] {
                    if conj && sym == Symmetry::OrientationPreserving {
                        continue;
                    }
                    cand.clear();
                    cand.extend(img.iter().map(|&(p, q)| {
                        let p = zmul(u, p);
                        if conj {
                            canon_point(zconj(p), zconj(q))
                        } else {
                            canon_point(p, q)
                        }
                    }));
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand.clone());
                    }
                }
            }
        }
    }
    best.expect("nonempty path")
}

fn to_z(x: &EInt) -> Z {
    use num_traits::ToPrimitive;
    (x.a.to_i128().expect("coordinate fits in i128"), x.b.to_i128().expect("coordinate fits in i128"))
}

/// Canonical key of a vertex cycle under rotation, reversal and `sym`.
/// Coordinates must fit in `i128`.
pub fn symmetry_key(points: &[ProjPoint], sym: Symmetry) -> Vec<[EInt; 2]> {
    let z: Vec<(Z, Z)> = points.iter().map(|f| (to_z(f.p()), to_z(f.q()))).collect();
    let e = |x: Z| EInt::new(x.0 as i64, x.1 as i64);
    symmetry_key_z(&z, sym).into_iter().map(|(p, q)| [e(p), e(q)]).collect()
}

/// Some rotation/reversal of `c2` is the image of `c1` under an element of the
/// symmetry group. Independent of [`symmetry_key`]: builds the candidate map
/// from a pair of edges and tests it on every vertex.
pub fn closed_paths_related(c1: &ClosedPath, c2: &ClosedPath, sym: Symmetry) -> bool {
    if c1.period != c2.period {
        return false;
    }
    let m = c1.period;
    let (p1, p2) = (c1.points(), c2.points());
    let src = UniMat::from_columns(&p1[0], &p1[1]).expect("edge");
    for r in 0..m {
        for dir in [1i64, -1] {
            let idx = |t: usize| (r as i64 + dir * t as i64).rem_euclid(m as i64) as usize;
            let dst = UniMat::from_columns(&p2[idx(0)], &p2[idx(1)]).expect("edge");
            for k in 0..6 {
                let d = UniMat::gl2([EInt::unit(k), EInt::zero(), EInt::zero(), EInt::one()]).expect("unit");
                for conj in [false, true] {
                    if conj && sym == Symmetry::OrientationPreserving {
                        continue;
                    }
                    // g = dst · d · src⁻¹, with conjugation applied to the source side
                    let s = if conj { conj_mat(&src) } else { src.clone() };
                    let g = dst.mul(&d).mul(&s.inverse());
                    let ok = (0..m).all(|t| {
                        let x = if conj { p1[t].conj() } else { p1[t].clone() };
                        g.apply(&x).point_eq(&p2[idx(t)])
                    });
                    if ok {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn conj_mat(a: &UniMat) -> UniMat {
    UniMat::gl2(a.entries().clone().map(|x| x.conj())).expect("conjugate of a unimodular matrix")
}

/// Depth-first search for closed non-self-intersecting paths of period `m`
/// anchored at `v₀ = 1/0`, `v₁ = 0/1`, deduplicated under `options.symmetry`.
/// Fails once more than `limit` raw paths are found.
pub fn enumerate_closed_paths(m: usize, limit: usize, options: EnumOptions) -> Result<Enumeration> {
    if !(MIN_PERIOD..=MAX_PERIOD).contains(&m) {
        return Err(Error::PeriodOutOfRange(m));
    }
    let a_max = if options.pruned { (m - 2) as i128 } else { 2 * (m - 2) as i128 };
    let elems = elements(a_max * a_max);
    let mut b = vec![0i128, 1];
    for d in 2..=m + 1 {
        b.push(b[d - 2] + a_max * b[d - 1]);
    }
    let found = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);
    let search = Search { m, elems: &elems, den_bound: b.iter().map(|x| x * x).collect(), limit, found: &found, abort: &abort };
    let branches: Vec<(Vec<Found>, u64)> = elems
        .par_iter()
        .map(|&a1| {
            let (mut out, mut nodes) = (Vec::new(), 0u64);
            let mut vs = vec![((1, 0), (0, 0)), ((0, 0), (1, 0))];
            search.step(&mut vs, &mut Vec::new(), 0, a1, &mut out, &mut nodes);
            (out, nodes)
        })
        .collect();
    if abort.load(Ordering::Relaxed) {
        return Err(Error::LimitExhausted(limit));
    }
    let nodes = branches.iter().map(|b| b.1).sum();
    let raw: Vec<Found> = branches.into_iter().flat_map(|b| b.0).collect();
    let raw_count = raw.len();
    let keyed: Vec<(Vec<(Z, Z)>, usize)> =
        raw.par_iter().enumerate().map(|(i, f)| (symmetry_key_z(&f.verts, options.symmetry), i)).collect();
    let mut reps: BTreeMap<Vec<(Z, Z)>, usize> = BTreeMap::new();
    for (k, i) in keyed {
        reps.entry(k).or_insert(i);
    }
    let classes = reps
        .into_values()
        .map(|i| {
            let a: Vec<EInt> = raw[i].angles.iter().map(|&(x, y)| EInt::new(x as i64, y as i64)).collect();
            ClosedPath::from_angles(&a).expect("search emits closed paths")
        })
        .collect();
    Ok(Enumeration { period: m, options, raw_count, nodes, classes })
}

/// Closed paths inside the real Farey plane: every angle is a rational integer.
pub fn is_real(c: &ClosedPath) -> bool {
    c.angles.values.iter().all(EInt::is_rational)
}
