use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("duplicate {kind} `{name}`")]
    DuplicateName { kind: &'static str, name: String },

    #[error("state space mismatch: expected {expected} states, found {found}")]
    StateSpaceMismatch { expected: usize, found: usize },

    #[error("{what}: weights sum to {sum}, not 1")]
    Normalization { what: String, sum: f64 },

    #[error("{what}: invalid weight {value}")]
    InvalidWeight { what: String, value: f64 },

    #[error("outcome `{outcome}` is not an outcome of `{measurement}`")]
    UnknownOutcome { measurement: String, outcome: String },

    #[error("{0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no operational eigenstate preparation declared for value `{value}` of `{class}`")]
    NoEigenstatePreparation { class: String, value: String },

    #[error("engine defect: {0}")]
    EngineDefect(String),

    #[error("schema: {0}")]
    Schema(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        Error::UnknownName {
            kind,
            name: name.into(),
        }
    }
}
