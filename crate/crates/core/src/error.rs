use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ample scale must be positive, got alpha = {0}")]
    InvalidAmpleClass(String),
    #[error("divisor multiple must be positive, got m = {0}")]
    InvalidDivisor(String),
    #[error("invalid variety model: {0}")]
    InvalidModel(String),
    #[error("operation not available for model {model}: {detail}")]
    UnsupportedModel { model: String, detail: String },
    #[error("polynomial charge is identically zero")]
    DegenerateCharge,
    #[error("charges are asymptotically antiparallel; phase gap is not below 1")]
    PhaseGapViolation,
    #[error("(a, b) = ({a}, {b}) does not satisfy the positivity hypotheses")]
    InvalidAbParameters { a: String, b: String },
    #[error("tilt slope is not zero: {0}")]
    NuNotZero(String),
    #[error("class has rank zero")]
    ZeroRank,
    #[error("t = alpha^2 must be positive, got {0}")]
    NonpositiveT(String),
    #[error("wall conic is identically zero")]
    DegenerateConic,
    #[error("twisted ch1 of the class is not positive across the window: {0}")]
    Ch1SignChange(String),
    #[error("empty window: {0}")]
    EmptyWindow(String),
    #[error("class is not a lattice point of {0}")]
    NotLatticePoint(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("scenario invariant violated: {0}")]
    ScenarioInvariant(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidAmpleClass(_) => "invalid-ample-class",
            Error::InvalidDivisor(_) => "invalid-divisor",
            Error::InvalidModel(_) => "invalid-model",
            Error::UnsupportedModel { .. } => "unsupported-model",
            Error::DegenerateCharge => "degenerate-charge",
            Error::PhaseGapViolation => "phase-gap-violation",
            Error::InvalidAbParameters { .. } => "invalid-ab-parameters",
            Error::NuNotZero(_) => "nu-not-zero",
            Error::ZeroRank => "zero-rank",
            Error::NonpositiveT(_) => "nonpositive-t",
            Error::DegenerateConic => "degenerate-conic",
            Error::Ch1SignChange(_) => "ch1-sign-change",
            Error::EmptyWindow(_) => "empty-window",
            Error::NotLatticePoint(_) => "not-lattice-point",
            Error::HypothesisViolated(_) => "hypothesis-violated",
            Error::BoundViolated(_) => "bound-violated",
            Error::ScenarioInvariant(_) => "scenario-invariant",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse(_) => "parse-error",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
