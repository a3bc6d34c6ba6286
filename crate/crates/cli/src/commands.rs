//! Subcommand implementations. Each returns a [`Report`]; library errors become
//! usage errors except relation violations, which are verification failures.

use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use tetrafarey::eisenstein::JsonBig;
use tetrafarey::farey3d::{
    apexes, det_length_sq, is_edge, is_face, is_fundamental_tetrahedron, reflect_apex, symmetric_farey_sum, tetrahedron_on_edge, Face,
    Tetra,
};
use tetrafarey::friezes::{enumerate_closed_paths, frieze_from_closed_path, quiddity_bound_check, ClosedPath, EnumOptions, Symmetry};
use tetrafarey::lambda::{
    b_sequence, five_point_float, geodesic_walk, verify_five_point, verify_lambda_det, verify_soddy_gosset, verify_tetra_ptolemy,
    Horosphere,
};
use tetrafarey::paths::{
    angle_sequence, cf_eval, normalise_path_at, normalised_to_skew, path_from_angles, skew_normalise, skew_normalise_at, zero_subfraction,
    AngleSeq, PathMode, PathRep,
};
use tetrafarey::random::{random_finite_point, random_gl2, random_horospheres5, random_point, rng_from_seed, SeededRng};
use tetrafarey::tilings::{
    check_window, coplanarity_test, orbit, paths_from_tiling, tiling_from_paths, tiling_to_triple, tilings_equivalent, triple_to_tiling,
    TilingTriple, TilingWindow, WindowSpec,
};
use tetrafarey::{EInt, Error, ProjPoint};

use crate::io::{load, to_value, CliError, CliResult, Report};
use crate::{Cli, Cmd, FriezeCmd, GraphCmd, NormMode, PathCmd, TileCmd, VerifyCmd, WindowArgs};

#[derive(Deserialize)]
#[serde(untagged)]
enum PathIn {
    Rep(PathRep),
    Points(Vec<ProjPoint>),
}

impl PathIn {
    fn points(&self) -> &[ProjPoint] {
        match self {
            PathIn::Rep(p) => &p.vertices,
            PathIn::Points(v) => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnglesIn {
    Seq(AngleSeq),
    /// Plain list, indexed from 1.
    Plain(Vec<EInt>),
}

impl AnglesIn {
    fn into_seq(self) -> AngleSeq {
        match self {
            AnglesIn::Seq(s) => s,
            AnglesIn::Plain(v) => AngleSeq::new(1, v),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClosedIn {
    Closed(ClosedPath),
    Rep(PathRep),
    Points(Vec<ProjPoint>),
}

fn need<'a>(name: &str, x: &'a Option<String>) -> CliResult<&'a str> {
    x.as_deref().ok_or_else(|| CliError::usage(format!("--{name} is required unless --samples is given")))
}

fn exact_residual(lhs: &num_bigint::BigInt, rhs: &num_bigint::BigInt) -> Value {
    if lhs == rhs {
        json!("exact-zero")
    } else {
        to_value(JsonBig(&(lhs - rhs)))
    }
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    let mut rng = rng_from_seed(cli.seed);
    match &cli.cmd {
        Cmd::Graph(g) => graph(g),
        Cmd::Verify(v) => verify(v, cli.tolerance, &mut rng),
        Cmd::Path(p) => path(p),
        Cmd::Tile(t) => tile(t),
        Cmd::Frieze(f) => frieze(f),
    }
}

fn graph(g: &GraphCmd) -> CliResult<Report> {
    Ok(match g {
        GraphCmd::Edge { u, v } => {
            let (u, v): (ProjPoint, ProjPoint) = (load("u", u)?, load("v", v)?);
            let l2 = det_length_sq(&u, &v)?;
            Report::new("graph edge", true, json!({ "is_edge": is_edge(&u, &v)?, "det_length_sq": to_value(JsonBig(&l2)) }))
        }
        GraphCmd::Face { face } => {
            let f: Face = load("face", face)?;
            let ok = is_face(&f)?;
            let ap = if ok { Some(apexes(&f)?) } else { None };
            Report::new("graph face", true, json!({ "is_face": ok, "apexes": ap }))
        }
        GraphCmd::Tetra { tetra } => {
            let t: Tetra = load("tetra", tetra)?;
            Report::new("graph tetra", true, json!({ "is_fundamental": is_fundamental_tetrahedron(&t)? }))
        }
        GraphCmd::Star { u, v } => {
            let (u, v): (ProjPoint, ProjPoint) = (load("u", u)?, load("v", v)?);
            let ring = symmetric_farey_sum(&u, &v)?;
            let t = tetrahedron_on_edge(&u, &v)?;
            Report::new("graph star", true, json!({ "ring": ring, "tetrahedron": t }))
        }
        GraphCmd::Reflect { face, apex } => {
            let (f, a): (Face, ProjPoint) = (load("face", face)?, load("apex", apex)?);
            Report::new("graph reflect", true, json!({ "apex": reflect_apex(&f, &a)?.reduce() }))
        }
    })
}

fn random_tetra(rng: &mut SeededRng) -> Tetra {
    Tetra::standard().apply(&random_gl2(rng, 6))
}

fn random_point_off(rng: &mut SeededRng, t: &Tetra) -> ProjPoint {
    loop {
        let x = random_point(rng, 8);
        if !t.contains(&x) {
            return x;
        }
    }
}

/// Summary of a seeded batch: the first failing instance is kept as a witness.
struct BatchResult {
    samples: usize,
    skipped: usize,
    failures: usize,
    max_residual: f64,
    first_failure: Option<Value>,
}

impl BatchResult {
    fn new(samples: usize) -> Self {
        BatchResult { samples, skipped: 0, failures: 0, max_residual: 0.0, first_failure: None }
    }

    fn record(&mut self, ok: bool, residual: f64, witness: impl FnOnce() -> Value) {
        self.max_residual = self.max_residual.max(residual);
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }

    fn report(self, command: &str) -> Report {
        let mut r = Report::new(
            command,
            self.failures == 0,
            json!({ "samples": self.samples, "skipped": self.skipped, "failures": self.failures, "max_residual": self.max_residual }),
        )
        .residual(json!(self.max_residual));
        if let Some(w) = self.first_failure {
            r = r.witness(w);
        }
        r
    }
}

fn verify(v: &VerifyCmd, tol: f64, rng: &mut SeededRng) -> CliResult<Report> {
    match v {
        VerifyCmd::PtolemyTetra { tetra, x, batch } => {
            if let Some(n) = batch.samples {
                let mut b = BatchResult::new(n);
                for _ in 0..n {
                    let t = random_tetra(rng);
                    let x = random_point_off(rng, &t);
                    let r = verify_tetra_ptolemy(&t, &x)?;
                    b.record(r.equal && r.residual < tol, r.residual, || json!({ "tetra": t, "x": x, "report": r }));
                }
                return Ok(b.report("verify ptolemy-tetra"));
            }
            let t: Tetra = load("tetra", need("tetra", tetra)?)?;
            let x: ProjPoint = load("x", need("x", x)?)?;
            let r = verify_tetra_ptolemy(&t, &x)?;
            Ok(Report::new("verify ptolemy-tetra", r.equal && r.residual < tol, &r).residual(exact_residual(&r.lhs, &r.rhs)))
        }
        VerifyCmd::FivePoint { points, horospheres, batch } => {
            if let Some(n) = batch.samples {
                let mut b = BatchResult::new(n);
                for _ in 0..n {
                    let h = random_horospheres5(rng);
                    let (l, r, res) = five_point_float(&h)?;
                    b.record(res < tol, res, || json!({ "horospheres": h, "lhs": l, "rhs": r }));
                }
                return Ok(b.report("verify five-point"));
            }
            if let Some(h) = horospheres {
                let h: [Horosphere; 5] = load("horospheres", h)?;
                let (lhs, rhs, residual) = five_point_float(&h)?;
                let r = json!({ "lhs": lhs, "rhs": rhs, "residual": residual });
                return Ok(Report::new("verify five-point", residual < tol, r).residual(json!(residual)));
            }
            let p: [ProjPoint; 5] = load("points", need("points", points)?)?;
            let r = verify_five_point(&p)?;
            Ok(Report::new("verify five-point", r.equal && r.residual < tol, &r).residual(exact_residual(&r.lhs, &r.rhs)))
        }
        VerifyCmd::Soddy { tetra, batch } => {
            if let Some(n) = batch.samples {
                let mut b = BatchResult::new(n);
                for _ in 0..n {
                    let t = random_tetra(rng);
                    let r = verify_soddy_gosset(&t)?;
                    b.record(r.equal && r.residual < tol, r.residual, || json!({ "tetra": t, "report": r }));
                }
                return Ok(b.report("verify soddy"));
            }
            let t: Tetra = load("tetra", need("tetra", tetra)?)?;
            let r = verify_soddy_gosset(&t)?;
            Ok(Report::new("verify soddy", r.equal && r.residual < tol, &r).residual(exact_residual(&r.lhs, &r.rhs)))
        }
        VerifyCmd::LambdaDet { u, v, batch } => {
            if let Some(n) = batch.samples {
                let mut b = BatchResult::new(n);
                for _ in 0..n {
                    let (x, y) = loop {
                        let x = if rng.gen_bool(0.1) { ProjPoint::infinity() } else { random_finite_point(rng, 10_000) };
                        let y = random_finite_point(rng, 10_000);
                        if !x.point_eq(&y) {
                            break (x, y);
                        }
                    };
                    let r = verify_lambda_det(&x, &y)?;
                    b.record(r.residual < tol, r.residual, || json!({ "u": x, "v": y, "report": r }));
                }
                return Ok(b.report("verify lambda-det"));
            }
            let (x, y): (ProjPoint, ProjPoint) = (load("u", need("u", u)?)?, load("v", need("v", v)?)?);
            let r = verify_lambda_det(&x, &y)?;
            Ok(Report::new("verify lambda-det", r.residual < tol, &r).residual(json!(r.residual)))
        }
        VerifyCmd::BSeq { x, y, max_steps, batch } => {
            if let Some(n) = batch.samples {
                let mut b = BatchResult::new(n);
                for _ in 0..n {
                    let (x, y) = (random_point(rng, 6), random_point(rng, 6));
                    if x.point_eq(&y) {
                        b.skipped += 1;
                        continue;
                    }
                    let walk = match geodesic_walk(&x, &y, *max_steps) {
                        Ok(w) => w,
                        Err(Error::CoplanarGeodesic | Error::AmbiguousCrossing(_)) => {
                            b.skipped += 1;
                            continue;
                        }
                        Err(e) => return Err(e.into()),
                    };
                    let res = b_sequence(&x, &walk);
                    let ok = res.as_ref().is_ok_and(|s| s.starts_1113() || walk.steps.is_empty());
                    b.record(ok, 0.0, || json!({ "x": x, "y": y, "error": res.err().map(|e| e.to_string()) }));
                }
                return Ok(b.report("verify b-seq"));
            }
            let (x, y): (ProjPoint, ProjPoint) = (load("x", need("x", x)?)?, load("y", need("y", y)?)?);
            let walk = geodesic_walk(&x, &y, *max_steps)?;
            let s = b_sequence(&x, &walk)?;
            let starts = s.starts_1113();
            let result = json!({
                "b": s,
                "starts_1113": starts,
                "tetrahedra": walk.tetrahedra.len(),
                "stream_lag4_violation": s.lag4_violation(),
                "stream_lag4_nonincrease": s.lag4_nonincrease(),
            });
            Ok(Report::new("verify b-seq", starts || walk.steps.is_empty(), result).residual(json!("exact-zero")))
        }
    }
}

fn path(p: &PathCmd) -> CliResult<Report> {
    match p {
        PathCmd::Normalize { path, seed_rep, mode, base_index } => {
            let input: PathIn = load("path", path)?;
            let pts = input.points();
            let first = pts.first().ok_or_else(|| CliError::from(Error::TooShort { need: 1, got: 0 }))?;
            let seed = match seed_rep {
                Some(s) => load::<ProjPoint>("seed-rep", s)?,
                None => first.reduce(),
            };
            let out = match mode {
                NormMode::Normalised => normalise_path_at(pts, &seed, *base_index)?,
                NormMode::SkewNormalised => skew_normalise_at(pts, &seed, *base_index)?,
            };
            Ok(Report::new("path normalize", true, out))
        }
        PathCmd::Angles { path } => {
            let skew = match load::<PathIn>("path", path)? {
                PathIn::Rep(r) if r.mode == PathMode::SkewNormalised => r,
                PathIn::Rep(r) if r.mode == PathMode::Normalised => normalised_to_skew(&r)?,
                other => {
                    let pts = other.points();
                    let first = pts.first().ok_or_else(|| CliError::from(Error::TooShort { need: 1, got: 0 }))?;
                    skew_normalise(pts, &first.reduce())?
                }
            };
            Ok(Report::new("path angles", true, json!({ "angles": angle_sequence(&skew)?, "path": skew })))
        }
        PathCmd::FromAngles { angles, v0, v1 } => {
            let a = load::<AnglesIn>("angles", angles)?.into_seq();
            let v0 = v0.as_deref().map(|s| load::<ProjPoint>("v0", s)).transpose()?.unwrap_or_else(ProjPoint::infinity);
            let v1 = v1.as_deref().map(|s| load::<ProjPoint>("v1", s)).transpose()?.unwrap_or_else(|| ProjPoint::int(0, 0));
            Ok(Report::new("path from-angles", true, path_from_angles(&v0, &v1, &a)?))
        }
        PathCmd::Cf { angles } => {
            let a: Vec<EInt> = load("angles", angles)?;
            let r = cf_eval(&a)?;
            let result = json!({ "eval": r, "zero_subfraction": zero_subfraction(&a) });
            Ok(Report::new("path cf", r.relation_holds, result))
        }
    }
}

/// Lifts path input to the normalised form required by the tiling constructors.
fn normalised(name: &str, arg: &str) -> CliResult<PathRep> {
    Ok(match load::<PathIn>(name, arg)? {
        PathIn::Rep(r) if r.mode == PathMode::Normalised => r,
        PathIn::Rep(r) => {
            let first = r.vertices.first().ok_or_else(|| CliError::from(Error::TooShort { need: 1, got: 0 }))?;
            normalise_path_at(&r.vertices, &first.reduce(), r.base_index)?
        }
        PathIn::Points(v) => {
            let first = v.first().ok_or_else(|| CliError::from(Error::TooShort { need: 1, got: 0 }))?;
            normalise_path_at(&v, &first.reduce(), 0)?
        }
    })
}

fn spec_from(w: &WindowArgs, rows: (i64, usize), cols: (i64, usize)) -> WindowSpec {
    WindowSpec::new(w.row_offset.unwrap_or(rows.0), w.rows.unwrap_or(rows.1), w.col_offset.unwrap_or(cols.0), w.cols.unwrap_or(cols.1))
}

fn strip(mut w: TilingWindow) -> TilingWindow {
    w.generators = None;
    w
}

fn tile(t: &TileCmd) -> CliResult<Report> {
    match t {
        TileCmd::FromPaths { u, v, mode, window } => {
            let (u, v) = (normalised("u", u)?, normalised("v", v)?);
            let spec = spec_from(window, (u.base_index, u.len()), (v.base_index, v.len()));
            let w = tiling_from_paths(&u, &v, (*mode).into(), Some(spec))?;
            Ok(Report::new("tile from-paths", true, w))
        }
        TileCmd::FromTriple { triple, window } => {
            let tr: TilingTriple = load("triple", triple)?;
            let rows = (tr.a.base_index - 1, tr.a.values.len() + 2);
            let cols = (tr.b.base_index - 1, tr.b.values.len() + 2);
            let w = triple_to_tiling(&tr, spec_from(window, rows, cols))?;
            Ok(Report::new("tile from-triple", true, w))
        }
        TileCmd::Check { window } => {
            let w: TilingWindow = load("window", window)?;
            let c = check_window(&w)?;
            let mut r = Report::new("tile check", c.ok(), &c);
            if let Some(v) = &c.first_violation {
                r = r.witness(v);
            }
            Ok(r)
        }
        TileCmd::ToPaths { window, mode } => {
            let w: TilingWindow = load("window", window)?;
            let (u, v) = paths_from_tiling(&w, (*mode).into())?;
            Ok(Report::new("tile to-paths", true, json!({ "u": u, "v": v })))
        }
        TileCmd::ToTriple { window } => {
            let w: TilingWindow = load("window", window)?;
            Ok(Report::new("tile to-triple", true, tiling_to_triple(&w)?))
        }
        TileCmd::Equiv { window, other } => {
            let w = strip(load::<TilingWindow>("window", window)?);
            match other {
                Some(o) => {
                    let o: TilingWindow = load("other", o)?;
                    Ok(Report::new("tile equiv", true, json!({ "equivalent": tilings_equivalent(&w, &o)? })))
                }
                None => {
                    let orb = orbit(&w);
                    Ok(Report::new("tile equiv", true, json!({ "generic": w.is_generic(), "orbit_size": orb.len(), "orbit": orb })))
                }
            }
        }
        TileCmd::Coplanar { window } => {
            let w: TilingWindow = load("window", window)?;
            let r = coplanarity_test(&w)?;
            let mut rep = Report::new("tile coplanar", r.condition_b == r.condition_c, &r);
            if let Some(e) = r.non_integer_entry {
                rep = rep.witness(json!({ "non_integer_entry": e }));
            }
            Ok(rep)
        }
    }
}

fn frieze(f: &FriezeCmd) -> CliResult<Report> {
    match f {
        FriezeCmd::Enumerate { period, limit, out, orientation_preserving, unpruned } => {
            let symmetry = if *orientation_preserving { Symmetry::OrientationPreserving } else { Symmetry::Full };
            let en = enumerate_closed_paths(*period, *limit, EnumOptions { symmetry, pruned: !unpruned })?;
            let mut all_ok = true;
            let classes: Vec<Value> = en
                .classes
                .iter()
                .map(|c| {
                    let q = quiddity_bound_check(c).map(|q| q.holds).unwrap_or(false);
                    let fr = frieze_from_closed_path(c).map(|f| f.zero_free).unwrap_or(false);
                    all_ok &= q && fr;
                    json!({ "points": c.points(), "angles": c.angles, "quiddity_bound": q, "zero_free": fr })
                })
                .collect();
            let mut result = json!({
                "period": en.period,
                "symmetry": symmetry,
                "pruned": !unpruned,
                "raw_count": en.raw_count,
                "class_count": classes.len(),
                "nodes": en.nodes,
            });
            match out {
                Some(path) => {
                    let doc = json!({ "schema": 1, "period": en.period, "symmetry": symmetry, "classes": classes });
                    std::fs::write(path, crate::io::render(&doc, Some(2)) + "\n")
                        .map_err(|e| CliError::usage(format!("writing {}: {e}", path.display())))?;
                    result["out"] = json!(path.display().to_string());
                }
                None => result["classes"] = Value::Array(classes),
            }
            Ok(Report::new("frieze enumerate", all_ok, result))
        }
        FriezeCmd::FromPath { path } => {
            let c = match load::<ClosedIn>("path", path)? {
                ClosedIn::Closed(c) => c,
                ClosedIn::Rep(r) => ClosedPath::from_path(&r)?,
                ClosedIn::Points(v) => ClosedPath::from_points(&v)?,
            };
            let fr = frieze_from_closed_path(&c)?;
            let tame = check_window(&fr.window)?.ok();
            let simple = c.is_simple();
            let quiddity = quiddity_bound_check(&c).ok();
            let mut r = Report::new(
                "frieze from-path",
                tame && simple == fr.zero_free,
                json!({ "simple": simple, "frieze": fr, "quiddity": quiddity, "angles": c.angles }),
            );
            if let Some(z) = fr.zero_witness {
                r = r.witness(json!({ "zero_entry": z }));
            }
            Ok(r)
        }
    }
}
