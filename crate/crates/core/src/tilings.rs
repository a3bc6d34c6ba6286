//! Tame SL₂(ℤ[σ])-tilings on finite windows: construction from paths,
//! verification, recovery of paths, the triple parametrisation and
//! equivalence classes.

use serde::{Deserialize, Serialize};

use crate::eisenstein::{det2, EInt, ProjPoint, UniMat};
use crate::error::{Error, Result};
use crate::paths::{angle_sequence, normalised_to_skew, skew_path_window, skew_to_normalised, AngleSeq, PathMode, PathRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TilingMode {
    /// `m_ij = p_i r_j + q_i s_j`.
    Scalar,
    /// `m_ij = p_i s_j − q_i r_j`.
    Det,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Generators {
    pub u: PathRep,
    pub v: PathRep,
    pub mode: TilingMode,
}

/// A rectangular window of a bi-infinite tiling; `entries[r][c]` is
/// `m_{row_offset + r, col_offset + c}`. Equality ignores generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawWindow")]
pub struct TilingWindow {
    pub row_offset: i64,
    pub col_offset: i64,
    pub entries: Vec<Vec<EInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Generators>,
}

#[derive(Deserialize)]
struct RawWindow {
    row_offset: i64,
    col_offset: i64,
    entries: Vec<Vec<EInt>>,
    #[serde(default)]
    generators: Option<Generators>,
}

impl TryFrom<RawWindow> for TilingWindow {
    type Error = Error;
    fn try_from(r: RawWindow) -> Result<Self> {
        let mut w = TilingWindow::new(r.row_offset, r.col_offset, r.entries)?;
        w.generators = r.generators;
        Ok(w)
    }
}

impl PartialEq for TilingWindow {
    fn eq(&self, o: &Self) -> bool {
        self.row_offset == o.row_offset && self.col_offset == o.col_offset && self.entries == o.entries
    }
}

impl Eq for TilingWindow {}

impl TilingWindow {
    pub fn new(row_offset: i64, col_offset: i64, entries: Vec<Vec<EInt>>) -> Result<Self> {
        let cols = entries.first().map(|r| r.len()).unwrap_or(0);
        if cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::WindowTooSmall("window must be a nonempty rectangle".into()));
        }
        Ok(TilingWindow { row_offset, col_offset, entries, generators: None })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn row_range(&self) -> std::ops::Range<i64> {
        self.row_offset..self.row_offset + self.rows() as i64
    }

    pub fn col_range(&self) -> std::ops::Range<i64> {
        self.col_offset..self.col_offset + self.cols() as i64
    }

    /// Entry at absolute indices.
    pub fn get(&self, i: i64, j: i64) -> Option<&EInt> {
        let (r, c) = (i - self.row_offset, j - self.col_offset);
        if r < 0 || c < 0 {
            return None;
        }
        self.entries.get(r as usize)?.get(c as usize)
    }

    fn at(&self, i: i64, j: i64) -> &EInt {
        self.get(i, j).expect("index inside window")
    }

    fn has_anchors(&self) -> bool {
        let (r, c) = (self.row_range(), self.col_range());
        r.contains(&0) && r.contains(&1) && c.contains(&0) && c.contains(&1)
    }

    /// Nonzero entries occur with both parities of `i + j`.
    pub fn is_generic(&self) -> bool {
        let mut seen = [false; 2];
        for i in self.row_range() {
            for j in self.col_range() {
                if !self.at(i, j).is_zero() {
                    seen[(i + j).rem_euclid(2) as usize] = true;
                }
            }
        }
        seen[0] && seen[1]
    }

    fn map_entries(&self, f: impl Fn(i64, i64, &EInt) -> EInt) -> TilingWindow {
        let entries = self.row_range().map(|i| self.col_range().map(|j| f(i, j, self.at(i, j))).collect()).collect();
        TilingWindow { row_offset: self.row_offset, col_offset: self.col_offset, entries, generators: None }
    }
}

/// Rows `row_offset .. row_offset + rows`, columns likewise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub row_offset: i64,
    pub rows: usize,
    pub col_offset: i64,
    pub cols: usize,
}

impl WindowSpec {
    pub fn new(row_offset: i64, rows: usize, col_offset: i64, cols: usize) -> Self {
        WindowSpec { row_offset, rows, col_offset, cols }
    }

    fn row_end(&self) -> i64 {
        self.row_offset + self.rows as i64 - 1
    }

    fn col_end(&self) -> i64 {
        self.col_offset + self.cols as i64 - 1
    }
}

fn entry(u: &ProjPoint, v: &ProjPoint, mode: TilingMode) -> EInt {
    match mode {
        TilingMode::Scalar => &(u.p() * v.p()) + &(u.q() * v.q()),
        TilingMode::Det => det2(u, v),
    }
}

/// The tiling of two normalised paths over `spec` (default: everything the paths cover).
pub fn tiling_from_paths(u: &PathRep, v: &PathRep, mode: TilingMode, spec: Option<WindowSpec>) -> Result<TilingWindow> {
    for p in [u, v] {
        if p.mode != PathMode::Normalised {
            return Err(Error::PathContract(p.base_index));
        }
        p.validate()?;
    }
    let spec = spec.unwrap_or(WindowSpec::new(u.base_index, u.len(), v.base_index, v.len()));
    if spec.rows == 0 || spec.cols == 0 {
        return Err(Error::WindowTooSmall("empty window".into()));
    }
    let mut entries = Vec::with_capacity(spec.rows);
    for i in spec.row_offset..=spec.row_end() {
        let ui = u.at(i)?;
        let row = (spec.col_offset..=spec.col_end()).map(|j| Ok(entry(ui, v.at(j)?, mode))).collect::<Result<_>>()?;
        entries.push(row);
    }
    let mut w = TilingWindow::new(spec.row_offset, spec.col_offset, entries)?;
    w.generators = Some(Generators { u: u.clone(), v: v.clone(), mode });
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Sl2,
    Tame,
}

/// Top-left corner (absolute indices) of a failing minor and its determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub row: i64,
    pub col: i64,
    pub det: EInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCheck {
    pub sl2_ok: bool,
    pub tame_ok: bool,
    /// False when the window is too thin for any 3×3 minor.
    pub tame_checked: bool,
    pub first_violation: Option<Violation>,
}

impl WindowCheck {
    pub fn ok(&self) -> bool {
        self.sl2_ok && self.tame_ok
    }
}

fn det3(w: &TilingWindow, i: i64, j: i64) -> EInt {
    let m = |a: i64, b: i64| w.at(i + a, j + b);
    let minor = |r1: i64, r2: i64, c1: i64, c2: i64| &(m(r1, c1) * m(r2, c2)) - &(m(r1, c2) * m(r2, c1));
    let t0 = m(0, 0) * &minor(1, 2, 1, 2);
    let t1 = m(0, 1) * &minor(1, 2, 0, 2);
    let t2 = m(0, 2) * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// Every adjacent 2×2 minor is 1 and every adjacent 3×3 minor is 0.
pub fn check_window(w: &TilingWindow) -> Result<WindowCheck> {
    if w.rows() < 2 || w.cols() < 2 {
        return Err(Error::WindowTooSmall(format!("{}x{} has no 2x2 minor", w.rows(), w.cols())));
    }
    let mut first = None;
    let mut sl2_ok = true;
    for i in w.row_offset..w.row_offset + w.rows() as i64 - 1 {
        for j in w.col_offset..w.col_offset + w.cols() as i64 - 1 {
            let d = &(w.at(i, j) * w.at(i + 1, j + 1)) - &(w.at(i, j + 1) * w.at(i + 1, j));
            if !d.is_one() {
                sl2_ok = false;
                first.get_or_insert(Violation { kind: ViolationKind::Sl2, row: i, col: j, det: d });
            }
        }
    }
    let tame_checked = w.rows() >= 3 && w.cols() >= 3;
    let mut tame_ok = true;
    if tame_checked {
        for i in w.row_offset..w.row_offset + w.rows() as i64 - 2 {
            for j in w.col_offset..w.col_offset + w.cols() as i64 - 2 {
                let d = det3(w, i, j);
                if !d.is_zero() {
                    tame_ok = false;
                    first.get_or_insert(Violation { kind: ViolationKind::Tame, row: i, col: j, det: d });
                }
            }
        }
    }
    Ok(WindowCheck { sl2_ok, tame_ok, tame_checked, first_violation: first })
}

fn require_tame(w: &TilingWindow) -> Result<()> {
    let c = check_window(w)?;
    match c.first_violation {
        None => Ok(()),
        Some(v) => Err(Error::NotTame(format!("{:?} minor at ({}, {}) has determinant {}", v.kind, v.row, v.col, v.det))),
    }
}

/// Normalised paths `(u, v)` whose tiling in `mode` reproduces `w`, with `u₀ = 1/0`, `u₁ = 0/1`.
pub fn paths_from_tiling(w: &TilingWindow, mode: TilingMode) -> Result<(PathRep, PathRep)> {
    require_tame(w)?;
    if !w.has_anchors() {
        return Err(Error::MissingAnchor);
    }
    let (a, b, c, d) = (w.at(0, 0), w.at(0, 1), w.at(1, 0), w.at(1, 1));
    let u = w
        .row_range()
        .map(|i| {
            let (x, y) = (w.at(i, 0), w.at(i, 1));
            ProjPoint::new(&(x * d) - &(y * c), &(y * a) - &(x * b))
        })
        .collect::<Result<Vec<_>>>()?;
    let v = w
        .col_range()
        .map(|j| {
            let (m0, m1) = (w.at(0, j).clone(), w.at(1, j).clone());
            match mode {
                TilingMode::Scalar => ProjPoint::new(m0, m1),
                TilingMode::Det => ProjPoint::new(-m1, m0),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((PathRep::new(u, PathMode::Normalised, w.row_offset)?, PathRep::new(v, PathMode::Normalised, w.col_offset)?))
}

/// Row `i` times `σ^{(−1)^i k}`, column `j` times `σ^{(−1)^j l}`, optionally negated.
pub fn equivalence_transform(w: &TilingWindow, k: i64, l: i64, flip: bool) -> TilingWindow {
    let sgn = |i: i64| if i.rem_euclid(2) == 0 { 1 } else { -1 };
    let base = if flip { 3 } else { 0 };
    w.map_entries(|i, j, x| x * &EInt::unit(base + sgn(i) * k + sgn(j) * l))
}

fn same_shape(w1: &TilingWindow, w2: &TilingWindow) -> Result<()> {
    if w1.row_offset != w2.row_offset || w1.col_offset != w2.col_offset || w1.rows() != w2.rows() || w1.cols() != w2.cols() {
        return Err(Error::ShapeMismatch);
    }
    Ok(())
}

/// Brute force over all 72 transforms.
pub fn tilings_equivalent(w1: &TilingWindow, w2: &TilingWindow) -> Result<bool> {
    same_shape(w1, w2)?;
    Ok(transforms().any(|(k, l, f)| &equivalence_transform(w1, k, l, f) == w2))
}

fn transforms() -> impl Iterator<Item = (i64, i64, bool)> {
    (0..6).flat_map(|k| (0..6).flat_map(move |l| [false, true].map(move |f| (k, l, f))))
}

/// Distinct windows among the 72 transforms of `w`.
pub fn orbit(w: &TilingWindow) -> Vec<TilingWindow> {
    let mut out: Vec<TilingWindow> = Vec::new();
    for (k, l, f) in transforms() {
        let t = equivalence_transform(w, k, l, f);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// `((aᵢ), (bⱼ), X)` with `det X = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriple")]
pub struct TilingTriple {
    pub a: AngleSeq,
    pub b: AngleSeq,
    pub x: UniMat,
}

#[derive(Deserialize)]
struct RawTriple {
    a: AngleSeq,
    b: AngleSeq,
    x: UniMat,
}

impl TryFrom<RawTriple> for TilingTriple {
    type Error = Error;
    fn try_from(r: RawTriple) -> Result<Self> {
        TilingTriple::new(r.a, r.b, r.x)
    }
}

impl TilingTriple {
    pub fn new(a: AngleSeq, b: AngleSeq, x: UniMat) -> Result<Self> {
        Ok(TilingTriple { a, b, x: x.into_sl2()? })
    }
}

/// Sector of `arg(a₀)` in units of `2π/3`; 0 if `a₀` is zero or absent.
fn seed_sector(a: &AngleSeq) -> i64 {
    a.get(0).map(|x| x.sector3() as i64).unwrap_or(0)
}

fn column_point(m: &UniMat, j: usize) -> ProjPoint {
    m.column(j)
}

/// Builds the tiling of a triple over `spec`. The window must contain rows and
/// columns 0 and 1.
pub fn triple_to_tiling(t: &TilingTriple, spec: WindowSpec) -> Result<TilingWindow> {
    if !t.x.is_sl2() {
        return Err(Error::NotSl2(t.x.det().to_string()));
    }
    if spec.row_offset > 0 || spec.row_end() < 1 || spec.col_offset > 0 || spec.col_end() < 1 {
        return Err(Error::MissingAnchor);
    }
    let ka = seed_sector(&t.a);
    let useed = UniMat::diag_unit(-ka);
    let u = skew_path_window(&useed.column(0), &useed.column(1), &t.a, spec.row_offset, spec.row_end())?;
    let kb = seed_sector(&t.b);
    let vseed = t.x.mul(&UniMat::diag_unit(-kb));
    let v = skew_path_window(&column_point(&vseed, 0), &column_point(&vseed, 1), &t.b, spec.col_offset, spec.col_end())?;
    tiling_from_paths(&skew_to_normalised(&u)?, &skew_to_normalised(&v)?, TilingMode::Det, Some(spec))
}

/// Inverse of [`triple_to_tiling`] on windows containing rows and columns 0 and 1.
pub fn tiling_to_triple(w: &TilingWindow) -> Result<TilingTriple> {
    if w.rows() < 3 || w.cols() < 3 {
        return Err(Error::WindowTooSmall("angles need at least 3 rows and 3 columns".into()));
    }
    let (u, v) = paths_from_tiling(w, TilingMode::Det)?;
    let (us, vs) = (normalised_to_skew(&u)?, normalised_to_skew(&v)?);
    let a = angle_sequence(&us)?;
    let b = angle_sequence(&vs)?;
    let (w0, w1) = (vs.at(0)?, vs.at(1)?);
    let y = UniMat::sl2([w0.p().clone(), w1.p().clone(), w0.q().clone(), w1.q().clone()])?;
    let x = UniMat::diag_unit(-seed_sector(&a)).mul(&y).mul(&UniMat::diag_unit(seed_sector(&b)));
    TilingTriple::new(a, b, x)
}

/// `aᵢ ↦ aᵢ·σ^{(−1)^{i+1}·2k}`, the effect of re-skew-normalising by `σ^{(−1)^i k}`.
pub fn rescale_angles(a: &AngleSeq, k: i64) -> AngleSeq {
    let values = a
        .values
        .iter()
        .enumerate()
        .map(|(n, x)| {
            let i = a.base_index + n as i64;
            let e = if (i + 1).rem_euclid(2) == 0 { 2 * k } else { -2 * k };
            x * &EInt::unit(e)
        })
        .collect();
    AngleSeq { base_index: a.base_index, values }
}

/// The triple obtained by re-normalising the row path by `k` and the column path by
/// `l`, with sign `±`. Its tiling is `equivalence_transform(·, k, l, negate)`.
pub fn equivalent_triple(t: &TilingTriple, k: i64, l: i64, negate: bool) -> TilingTriple {
    let a = rescale_angles(&t.a, k);
    let b = rescale_angles(&t.b, l);
    let alpha = seed_sector(&t.a) - seed_sector(&a) - k;
    let beta = seed_sector(&b) + l - seed_sector(&t.b);
    let mut x = UniMat::diag_unit(alpha).mul(&t.x).mul(&UniMat::diag_unit(beta));
    if negate {
        x = x.neg();
    }
    TilingTriple { a, b, x: x.into_sl2().expect("conjugating by diagonal units keeps det 1") }
}

/// Some `(k, l, ±)` relates the triples; see [`equivalent_triple`].
pub fn triples_equivalent(t1: &TilingTriple, t2: &TilingTriple) -> bool {
    (0..3).any(|k| {
        (0..3).any(|l| {
            let e = equivalent_triple(t1, k, l, false);
            e.a == t2.a && e.b == t2.b && (e.x == t2.x || e.x.neg() == t2.x)
        })
    })
}

/// `±X` normalised so the first nonzero entry (row-major) has `arg ∈ [0, π)`.
pub fn canonical_sign(x: &UniMat) -> UniMat {
    let first = x.entries().iter().find(|e| !e.is_zero()).expect("invertible matrix");
    if first.sector6() < 3 {
        x.clone()
    } else {
        x.neg()
    }
}

/// Integer-entry witnesses for the coplanarity criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoplanarityReport {
    /// Two consecutive all-integer rows and two consecutive all-integer columns.
    pub condition_c: bool,
    /// Every entry is a rational integer.
    pub condition_b: bool,
    pub coplanar: bool,
    pub integer_rows: Option<[i64; 2]>,
    pub integer_cols: Option<[i64; 2]>,
    pub non_integer_entry: Option<[i64; 2]>,
}

pub fn coplanarity_test(w: &TilingWindow) -> Result<CoplanarityReport> {
    require_tame(w)?;
    let row_int = |i: i64| w.col_range().all(|j| w.at(i, j).is_rational());
    let col_int = |j: i64| w.row_range().all(|i| w.at(i, j).is_rational());
    let integer_rows = w.row_range().find(|&i| i + 1 < w.row_range().end && row_int(i) && row_int(i + 1)).map(|i| [i, i + 1]);
    let integer_cols = w.col_range().find(|&j| j + 1 < w.col_range().end && col_int(j) && col_int(j + 1)).map(|j| [j, j + 1]);
    let non_integer_entry =
        w.row_range().flat_map(|i| w.col_range().map(move |j| (i, j))).find(|&(i, j)| !w.at(i, j).is_rational()).map(|(i, j)| [i, j]);
    let condition_c = integer_rows.is_some() && integer_cols.is_some();
    Ok(CoplanarityReport {
        condition_c,
        condition_b: non_integer_entry.is_none(),
        coplanar: condition_c,
        integer_rows,
        integer_cols,
        non_integer_entry,
    })
}
