use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distance matrix is not rectangular: row {row} has {len} entries, expected {expected}")]
    NotRectangular { row: usize, len: usize, expected: usize },
    #[error("instance needs at least one client and one facility")]
    EmptyInstance,
    #[error("negative distance {value} at ({row}, {col})")]
    NegativeDistance { row: usize, col: usize, value: f64 },
    #[error("non-finite distance at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("cross matrix is asymmetric at ({x}, {y}): {forward} vs {backward}")]
    AsymmetricCross { x: usize, y: usize, forward: f64, backward: f64 },
    #[error("cross matrix has nonzero diagonal {value} at point {x}")]
    NonZeroDiagonal { x: usize, value: f64 },
    #[error("cross matrix disagrees with client-facility distances at ({client}, {facility})")]
    CrossMismatch { client: usize, facility: usize },
    #[error("triangle inequality violated: d({x},{z}) exceeds d({x},{y}) + d({y},{z}) by {slack}")]
    TriangleViolation { x: usize, y: usize, z: usize, slack: f64 },
    #[error("multiplicity vector has {len} entries for {sites} client sites, or contains a zero")]
    BadMultiplicity { len: usize, sites: usize },
    #[error("label list has {len} entries, expected {expected}")]
    BadLabels { len: usize, expected: usize },
    #[error("points have mismatched dimensions ({expected} vs {found})")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported norm {0}; expected 1, 2 or inf")]
    UnsupportedNorm(String),
    #[error("edge ({from}, {to}) has non-positive weight {weight}")]
    NonPositiveWeight { from: String, to: String, weight: f64 },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("graph is disconnected: no path between {from} and {to}")]
    DisconnectedGraph { from: String, to: String },
    #[error("instance has no cross distances; metric validation is unavailable")]
    MissingCrossDistances,

    #[error("objective k = {k} is outside [1, {n}]")]
    KOutOfRange { k: usize, n: usize },
    #[error("objective set must be nonempty and strictly increasing")]
    BadObjectiveSet,
    #[error("facility index {index} out of range (instance has {m} facilities)")]
    FacilityOutOfRange { index: usize, m: usize },
    #[error("objective pair ({k}, {p}) must satisfy 1 <= k < p <= {n}")]
    BadObjectivePair { k: usize, p: usize, n: usize },

    #[error("ratio argument {0} must be >= 1")]
    XOutOfRange(f64),
    #[error("number of objectives q = {0} must be >= 2")]
    InvalidQ(usize),
    #[error("tolerance {0} must be positive and finite")]
    InvalidTol(f64),
    #[error("bisection stalled with residual {residual} above tolerance {tol}")]
    ToleranceUnreachable { residual: f64, tol: f64 },

    #[error("p/k = {p}/{k} must exceed 4 for the line construction")]
    RatioTooSmall { k: usize, p: usize },
    #[error("p/k = {p}/{k} must be at most 4 for the triangle construction")]
    RatioTooLarge { k: usize, p: usize },
    #[error("triple construction needs 1 < k < n, got k = {k}, n = {n}")]
    BadKN { k: usize, n: usize },
    #[error("invalid generator parameters: {0}")]
    BadParams(String),
    #[error("invalid sweep configuration: {0}")]
    BadConfig(String),

    #[error("unrecognised instance document: {0}")]
    UnknownFormat(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
