use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite input: {0}")]
    NonFiniteInput(String),

    #[error("empty operator: matrix must have at least one row and one column")]
    EmptyOperator,

    #[error("negative lambda: {0}")]
    NegativeLambda(f64),

    #[error(
        "singular at zero: lambda = 0 requires sigma_min > 1e-12 * sigma_max (got {sigma_min:e} vs {sigma_max:e})"
    )]
    SingularAtZero { sigma_min: f64, sigma_max: f64 },

    #[error("degenerate norm at lambda = {lambda:e}: residual_sq = {residual_sq:e}, norm_sq = {norm_sq:e}")]
    DegenerateNorm {
        lambda: f64,
        residual_sq: f64,
        norm_sq: f64,
    },

    #[error("empty grid")]
    EmptyGrid,

    #[error("non-monotone grid: entry {index} ({value:e}) is not strictly greater than its predecessor or not positive")]
    NonMonotoneGrid { index: usize, value: f64 },

    #[error("at lambda = {lambda:e}: {source}")]
    AtLambda { lambda: f64, source: Box<Error> },

    #[error("degenerate points: two of the three points coincide (squared distance {0:e})")]
    DegeneratePoints(f64),

    #[error("invalid interval: need 0 < lo < hi, got [{lo:e}, {hi:e}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("max iterations exceeded: no convergence after {0} iteration records")]
    MaxIterationsExceeded(usize),

    #[error("interval collapse: floating-point quadruple lost strict ordering at width {0:e}")]
    IntervalCollapse(f64),

    #[error("too few points: need at least 3, got {0}")]
    TooFewPoints(usize),

    #[error("no positive curvature among the sampled triples")]
    NoPositiveCurvature,

    #[error("invalid size: {0}")]
    InvalidSize(String),
}

impl Error {
    /// Name of the variant, used by the CLI when reporting failures.
    pub fn variant_name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonFiniteInput(_) => "NonFiniteInput",
            Error::EmptyOperator => "EmptyOperator",
            Error::NegativeLambda(_) => "NegativeLambda",
            Error::SingularAtZero { .. } => "SingularAtZero",
            Error::DegenerateNorm { .. } => "DegenerateNorm",
            Error::EmptyGrid => "EmptyGrid",
            Error::NonMonotoneGrid { .. } => "NonMonotoneGrid",
            Error::AtLambda { source, .. } => source.variant_name(),
            Error::DegeneratePoints(_) => "DegeneratePoints",
            Error::InvalidInterval { .. } => "InvalidInterval",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::MaxIterationsExceeded(_) => "MaxIterationsExceeded",
            Error::IntervalCollapse(_) => "IntervalCollapse",
            Error::TooFewPoints(_) => "TooFewPoints",
            Error::NoPositiveCurvature => "NoPositiveCurvature",
            Error::InvalidSize(_) => "InvalidSize",
        }
    }

    /// True for errors caused by malformed or out-of-contract input, as
    /// opposed to failures of the numerical procedure itself.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::AtLambda { source, .. } => source.is_input_error(),
            Error::DimensionMismatch(_)
            | Error::NonFiniteInput(_)
            | Error::EmptyOperator
            | Error::NegativeLambda(_)
            | Error::EmptyGrid
            | Error::NonMonotoneGrid { .. }
            | Error::InvalidInterval { .. }
            | Error::InvalidConfig(_)
            | Error::TooFewPoints(_)
            | Error::InvalidSize(_) => true,
            _ => false,
        }
    }

    /// Strips any `AtLambda` annotation.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLambda { source, .. } => source.root(),
            other => other,
        }
    }
}
