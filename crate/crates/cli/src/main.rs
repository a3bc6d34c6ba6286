mod commands;
mod io;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::{emit, error_value, report_value};

#[derive(Parser)]
#[command(name = "tetrafarey", version, about = "Exact computations in the tetrahedral Farey graph over the Eisenstein integers")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Spaces per indentation level; 0 prints compact JSON.
    #[arg(long, global = true)]
    pub json_indent: Option<usize>,
    /// Add `timing_ms` to the report (output is then not reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Edges, faces and tetrahedra of the graph.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Exact and numeric checks of λ-length relations.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Normalisation, angle sequences and continued fractions.
    #[command(subcommand)]
    Path(PathCmd),
    /// SL₂-tilings from paths and triples.
    #[command(subcommand)]
    Tile(TileCmd),
    /// Closed paths and friezes.
    #[command(subcommand)]
    Frieze(FriezeCmd),
}

#[derive(Subcommand)]
pub enum GraphCmd {
    /// Whether two points are adjacent, with their squared det-length.
    Edge { u: String, v: String },
    /// Whether three points span a face, with its two apexes.
    Face { face: String },
    /// Whether four points span a fundamental tetrahedron.
    Tetra { tetra: String },
    /// The six points completing an edge to a face, and one tetrahedron on it.
    Star { u: String, v: String },
    /// The apex on the other side of a face.
    Reflect { face: String, apex: String },
}

#[derive(Args)]
pub struct Batch {
    /// Check this many seeded random instances instead of explicit input.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Quartic Ptolemy identity for a fundamental tetrahedron and a point.
    PtolemyTetra {
        #[arg(long)]
        tetra: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        batch: Batch,
    },
    /// Five-point relation for points of Q̂(σ) or for decorated horospheres.
    FivePoint {
        #[arg(long, conflicts_with = "horospheres")]
        points: Option<String>,
        #[arg(long)]
        horospheres: Option<String>,
        #[command(flatten)]
        batch: Batch,
    },
    /// Reduced Soddy–Gosset identity on the standard horospheres of a tetrahedron.
    Soddy {
        #[arg(long)]
        tetra: Option<String>,
        #[command(flatten)]
        batch: Batch,
    },
    /// Numeric λ-length against the det-length.
    LambdaDet {
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[command(flatten)]
        batch: Batch,
    },
    /// b-sequence along the tetrahedra crossed by the geodesic from X to Y.
    BSeq {
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[command(flatten)]
        batch: Batch,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum NormMode {
    Normalised,
    SkewNormalised,
}

#[derive(Subcommand)]
pub enum PathCmd {
    /// Lifts a path to normalised or skew-normalised representatives.
    Normalize {
        #[arg(long)]
        path: String,
        /// Representative of the first vertex (defaults to its reduced form).
        #[arg(long)]
        seed_rep: Option<String>,
        #[arg(long, value_enum, default_value = "normalised")]
        mode: NormMode,
        #[arg(long, default_value_t = 0)]
        base_index: i64,
    },
    /// The 𝒯-angle sequence of a path.
    Angles {
        #[arg(long)]
        path: String,
    },
    /// The skew-normalised path with given angles.
    FromAngles {
        #[arg(long)]
        angles: String,
        #[arg(long)]
        v0: Option<String>,
        #[arg(long)]
        v1: Option<String>,
    },
    /// Path endpoint against the nested continued fraction.
    Cf {
        #[arg(long)]
        angles: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Scalar,
    Det,
}

impl From<ModeArg> for tetrafarey::tilings::TilingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Scalar => tetrafarey::tilings::TilingMode::Scalar,
            ModeArg::Det => tetrafarey::tilings::TilingMode::Det,
        }
    }
}

#[derive(Args)]
pub struct WindowArgs {
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub row_offset: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub col_offset: Option<i64>,
}

#[derive(Subcommand)]
pub enum TileCmd {
    /// The tiling of two paths.
    FromPaths {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// The tiling of an angle/angle/matrix triple.
    FromTriple {
        #[arg(long)]
        triple: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// All adjacent 2×2 minors are 1 and 3×3 minors are 0.
    Check {
        #[arg(long)]
        window: String,
    },
    /// Paths generating a window.
    ToPaths {
        #[arg(long)]
        window: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// The triple of a window.
    ToTriple {
        #[arg(long)]
        window: String,
    },
    /// Equivalence of two windows, or the orbit of one.
    Equiv {
        #[arg(long)]
        window: String,
        #[arg(long)]
        other: Option<String>,
    },
    /// Integer-entry coplanarity criteria.
    Coplanar {
        #[arg(long)]
        window: String,
    },
}

#[derive(Subcommand)]
pub enum FriezeCmd {
    /// Closed non-self-intersecting paths of a given period up to symmetry.
    Enumerate {
        #[arg(long)]
        period: usize,
        /// Give up after this many raw paths.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
        /// Write the classes here; standard output then carries only counts.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Identify paths under PGL₂(ℤ[σ]) only, without complex conjugation.
        #[arg(long)]
        orientation_preserving: bool,
        /// Search angles up to twice the quiddity bound.
        #[arg(long)]
        unpruned: bool,
    },
    /// The frieze of a closed path.
    FromPath { path: String },
}

fn command_name(cmd: &Cmd) -> String {
    let (group, sub) = match cmd {
        Cmd::Graph(g) => (
            "graph",
            match g {
                GraphCmd::Edge { .. } => "edge",
                GraphCmd::Face { .. } => "face",
                GraphCmd::Tetra { .. } => "tetra",
                GraphCmd::Star { .. } => "star",
                GraphCmd::Reflect { .. } => "reflect",
            },
        ),
        Cmd::Verify(v) => (
            "verify",
            match v {
                VerifyCmd::PtolemyTetra { .. } => "ptolemy-tetra",
                VerifyCmd::FivePoint { .. } => "five-point",
                VerifyCmd::Soddy { .. } => "soddy",
                VerifyCmd::LambdaDet { .. } => "lambda-det",
                VerifyCmd::BSeq { .. } => "b-seq",
            },
        ),
        Cmd::Path(p) => (
            "path",
            match p {
                PathCmd::Normalize { .. } => "normalize",
                PathCmd::Angles { .. } => "angles",
                PathCmd::FromAngles { .. } => "from-angles",
                PathCmd::Cf { .. } => "cf",
            },
        ),
        Cmd::Tile(t) => (
            "tile",
            match t {
                TileCmd::FromPaths { .. } => "from-paths",
                TileCmd::FromTriple { .. } => "from-triple",
                TileCmd::Check { .. } => "check",
                TileCmd::ToPaths { .. } => "to-paths",
                TileCmd::ToTriple { .. } => "to-triple",
                TileCmd::Equiv { .. } => "equiv",
                TileCmd::Coplanar { .. } => "coplanar",
            },
        ),
        Cmd::Frieze(f) => (
            "frieze",
            match f {
                FriezeCmd::Enumerate { .. } => "enumerate",
                FriezeCmd::FromPath { .. } => "from-path",
            },
        ),
    };
    format!("{group} {sub}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.cmd);
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(report) => {
            let t = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            emit(&report_value(&report, t), cli.json_indent);
            ExitCode::from(if report.pass { 0 } else { io::EXIT_FAIL as u8 })
        }
        Err(e) => {
            emit(&error_value(&name, &e), cli.json_indent);
            eprintln!("tetrafarey {name}: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
