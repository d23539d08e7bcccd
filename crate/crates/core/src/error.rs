use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0} (only 2 and 3 are supported)")]
    UnsupportedDimension(usize),
    #[error("halfspace intersection is empty")]
    EmptyIntersection,
    #[error("halfspace intersection is unbounded")]
    UnboundedIntersection,
    #[error("halfspace has a zero normal")]
    ZeroNormal,
    #[error("spanning vectors are linearly dependent")]
    DependentVectors,
    #[error("negative radius {0}")]
    NegativeRadius(String),
    #[error("vector is not on the unit sphere (norm {0})")]
    NotUnitVector(String),
    #[error("functional is not dual-unit (dual norm {0})")]
    NotDualUnit(String),
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("{0} requires a polytopal norm; use the sampled variant for analytic norms")]
    NeedsPolytopalNorm(&'static str),
    #[error("simplex is not equilateral: |v{i} - v{j}| = {found}, expected {expected}")]
    NotEquilateral {
        i: usize,
        j: usize,
        found: String,
        expected: String,
    },
    #[error("expected a {expected}-simplex, got {found} affinely independent vertices")]
    NotSimplex { expected: usize, found: usize },
    #[error("epsilon {0} is outside [0, 2]")]
    EpsilonOutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scene error: {0}")]
    Scene(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
