use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("component {0} has no boundary circle")]
    EmptyBoundary(usize),
    #[error("operation needs a connected surface, got {0} components")]
    Disconnected(usize),
    #[error("no minimal arc system without stops")]
    NoStops,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("arc endpoint lies on a stop (rim item {0})")]
    EndpointOnStop(usize),
    #[error("arc endpoint lies on the interior of another arc (rim item {0})")]
    EndpointOnArc(usize),
    #[error("arcs {0} and {1} cross")]
    CrossingArcs(usize, usize),
    #[error("degenerate arc: {0}")]
    DegenerateArc(String),
    #[error("inconsistent side pairing: {0}")]
    Pairing(String),
    #[error("({0}, {1}) is not a diagonal of the triangulation")]
    NotADiagonal(usize, usize),
    #[error("polygon needs at least 3 vertices, got {0}")]
    PolygonTooSmall(usize),
    #[error("expression shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("label mismatch: expected {expected}, found {found}")]
    LabelMismatch { expected: String, found: String },
    #[error("hom ranks are only defined for n >= 2 (n + 1 >= 3 stops), got n = {0}")]
    DiskTooSmall(usize),
    #[error("inputs are not composable: {0}")]
    NotComposable(String),
    #[error("undeclared label {0:?}")]
    UndeclaredLabel(String),
    #[error("cobordism needs at least {needed} non-preferred ends, got {got}")]
    TooFewEnds { needed: usize, got: usize },
    #[error("circle carries {0} stops, expected a stopless circle")]
    CircleHasStops(usize),
    #[error("not a stop: {0}")]
    NotAStop(String),
    #[error("operation would produce a closed surface")]
    ClosedResult,
}

pub type Result<T> = std::result::Result<T, Error>;
