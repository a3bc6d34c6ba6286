use thiserror::Error;

/// Errors raised by the library. Messages carry enough context to locate the
/// offending input; values are rendered with their `Display` form.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("0/0 is not a point")]
    ZeroFraction,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("division by zero")]
    DivisionByZero,
    #[error("determinant {0} is not a unit")]
    NotUnimodular(String),
    #[error("determinant {0} is not 1")]
    NotSl2(String),
    #[error("fraction {0} is not irreducible")]
    Reducible(String),
    #[error("points coincide: {0}")]
    Coincident(String),
    #[error("{0} and {1} are not joined by an edge")]
    NotEdge(String, String),
    #[error("points do not span a face")]
    NotFace,
    #[error("points do not span a fundamental tetrahedron")]
    NotTetrahedron,
    #[error("geodesic lies in a face plane")]
    CoplanarGeodesic,
    #[error("geodesic passes within {0:e} of an edge")]
    AmbiguousCrossing(f64),
    #[error("no exit face found at step {0}")]
    NoExit(usize),
    #[error("step budget of {0} exhausted")]
    StepBudget(usize),
    #[error("b-sequence relation violated at step {0}")]
    BRelation(usize),
    #[error("path contract violated at index {0}")]
    PathContract(i64),
    #[error("seed does not represent the first vertex")]
    SeedMismatch,
    #[error("path too short: need {need}, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("path has no vertex at index {0}")]
    MissingIndex(i64),
    #[error("angle sequence has no entry at index {0}")]
    MissingAngle(i64),
    #[error("points are not concyclic")]
    NotConcyclic,
    #[error("points are not in cyclic order")]
    NotCyclicOrder,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("window is not a tame SL2 tiling: {0}")]
    NotTame(String),
    #[error("window must contain rows and columns 0 and 1")]
    MissingAnchor,
    #[error("window shapes differ")]
    ShapeMismatch,
    #[error("period {0} outside the supported range 4..=10")]
    PeriodOutOfRange(usize),
    #[error("period must exceed 3, got {0}")]
    PeriodTooSmall(usize),
    #[error("path is not closed")]
    NotClosed,
    #[error("enumeration limit of {0} paths exhausted")]
    LimitExhausted(usize),
    #[error("path revisits a vertex at positions {0} and {1}")]
    SelfIntersecting(i64, i64),
    #[error("horosphere size must be positive")]
    BadHorosphere,
}

pub type Result<T> = std::result::Result<T, Error>;
