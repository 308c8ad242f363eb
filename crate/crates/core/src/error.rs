use thiserror::Error;

/// Errors raised by the set algebra and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("ground mismatch: operands live over different ground sets")]
    GroundMismatch,
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown channel `{0}`")]
    UnknownChannel(String),
    #[error("ground has no integer channel")]
    NoChannel,
    #[error("value {value} lies outside the domain of channel `{channel}`")]
    OutOfDomain { channel: String, value: i64 },
    #[error("duplicate name `{0}` in the ground set")]
    DuplicateName(String),
    #[error("point {0} is not in the space")]
    NotInCarrier(String),
    #[error("invalid modulus {0}")]
    BadModulus(i64),
}

/// Errors raised by map construction and symbolic map operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map `{0}` has no symbolic image rule")]
    Unsupported(String),
    #[error("map `{map}` expects space `{expected}`, got `{got}`")]
    WrongSpace {
        map: String,
        expected: String,
        got: String,
    },
    #[error("unknown map id `{0}`")]
    UnknownMap(String),
    #[error("point {0} is not in the map's space")]
    PointOutsideSpace(String),
    #[error("table map is not total: {0}")]
    NotTotal(String),
    #[error("registered tail rule disagrees with evaluation: {0}")]
    TailRuleMismatch(String),
    #[error(transparent)]
    Set(#[from] SetError),
}

/// Precondition failures of the verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Set(#[from] SetError),
}

/// Failures resolving catalog identifiers and definition files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown space id `{0}`")]
    UnknownSpace(String),
    #[error("malformed id `{id}`: {reason}")]
    BadId { id: String, reason: String },
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] crate::parse::ParseError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Failures of the numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("empty cover")]
    EmptyCover,
    #[error("grid point {0:?} lies in no cover element")]
    NotCovering(Vec<f64>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no convergence within {maxiter} iterations (last step {residual:e})")]
    NotConverged { maxiter: usize, residual: f64 },
    #[error("gauge inequality fails for the pair {x:?}, {y:?}")]
    GaugeViolated { x: Vec<f64>, y: Vec<f64> },
    #[error("map leaves the domain at {0:?}")]
    OutOfDomain(Vec<f64>),
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error("not a metric: {0}")]
    NotAMetric(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Failures running a scripted case.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CaseError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("TOPOFIX_NMAX must be a positive integer, got `{0}`")]
    BadNmax(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Set(#[from] SetError),
}
