use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("element `{element}` is not in poset {poset}")]
    ElementNotInPoset { element: String, poset: String },

    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },

    #[error("not monotone: {0}")]
    NotMonotone(String),

    #[error("monad mismatch: {expected} vs {found}")]
    MonadMismatch { expected: String, found: String },

    #[error("carrier of {size} elements exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },

    #[error("interval endpoints out of order: {lo} is not below {hi}")]
    IntervalOrder { lo: String, hi: String },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unbound name `{0}`")]
    UnboundName(String),

    #[error("loop factor {factor} is not the last factor of {object}")]
    LoopFactorMissing { factor: String, object: String },

    #[error("at {path}: {cause}")]
    AtNode { path: String, cause: Box<Error> },

    #[error("objective `{objective}` is not available for the {monad} monad")]
    ObjectiveMonadMismatch { objective: String, monad: String },

    #[error("no parameter yields a feasible design")]
    NoFeasibleParameter,

    #[error("the observations have zero probability under every hypothesis")]
    ZeroEvidence,

    #[error("no parameter value is consistent with every observation")]
    NoFeasibleTheta,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("model error: {0}")]
    Model(String),
}

impl Error {
    /// Strips `AtNode` wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtNode { cause, .. } => cause.root_cause(),
            other => other,
        }
    }

    /// A stable snake_case name for the variant of the root cause.
    pub fn kind(&self) -> &'static str {
        match self.root_cause() {
            Error::InvalidPoset(_) => "invalid_poset",
            Error::ElementNotInPoset { .. } => "element_not_in_poset",
            Error::ObjectMismatch { .. } => "object_mismatch",
            Error::NotMonotone(_) => "not_monotone",
            Error::MonadMismatch { .. } => "monad_mismatch",
            Error::CarrierTooLarge { .. } => "carrier_too_large",
            Error::IntervalOrder { .. } => "interval_order",
            Error::InvalidDistribution(_) => "invalid_distribution",
            Error::UnboundName(_) => "unbound_name",
            Error::LoopFactorMissing { .. } => "loop_factor_missing",
            Error::AtNode { .. } => unreachable!("root_cause strips AtNode"),
            Error::ObjectiveMonadMismatch { .. } => "objective_monad_mismatch",
            Error::NoFeasibleParameter => "no_feasible_parameter",
            Error::ZeroEvidence => "zero_evidence",
            Error::NoFeasibleTheta => "no_feasible_theta",
            Error::InvalidInput(_) => "invalid_input",
            Error::Model(_) => "model",
        }
    }

    pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Self {
        Error::ObjectMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
