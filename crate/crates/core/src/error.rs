use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("score {0} is outside [0, 1] or not finite")]
    ScoreOutOfRange(f64),
    #[error("epsilon floor {0} must lie strictly inside (0, 1)")]
    BadEpsilon(f64),
    #[error("exponent {0} is not finite")]
    BadExponent(f64),
    #[error("duplicate domain `{0}`")]
    DuplicateDomain(String),
    #[error("profile has no domains")]
    EmptyProfile,
    #[error("empty input")]
    EmptyInput,
    #[error("bad weights: {0}")]
    BadWeights(String),
    #[error("length mismatch: {scores} scores but {weights} weights")]
    LengthMismatch { scores: usize, weights: usize },
    #[error("raw score {raw} exceeds maximum weight {weight}")]
    RawExceedsWeight { raw: f64, weight: f64 },
    #[error("weight {0} must be positive and finite")]
    NonpositiveWeight(f64),
    #[error("raw score {0} must be nonnegative and finite")]
    NegativeRaw(f64),
    #[error("subdomain table `{0}` has no entries")]
    EmptyTable(String),
    #[error("duplicate subdomain `{subdomain}` in table `{domain}`")]
    DuplicateSubdomain { domain: String, subdomain: String },
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("curve needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("curve exponents are not strictly increasing at index {0}")]
    NonMonotoneGrid(usize),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("more than one edit for domain `{0}`")]
    DuplicateEdit(String),
    #[error("perturbation scale {0} must be finite and nonnegative")]
    BadScale(f64),
    #[error("sample count must be at least 1")]
    BadSampleCount,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported schema version `{0}` (expected \"1\")")]
    SchemaVersionUnsupported(String),
    #[error("validation error in `{context}`: {source}")]
    Validation {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps a domain error with the document location that produced it.
    pub fn in_context(self, context: impl Into<String>) -> Error {
        Error::Validation {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True for errors produced while reading or validating input documents,
    /// as opposed to preconditions of a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::SchemaVersionUnsupported(_) | Error::Validation { .. }
        )
    }
}
