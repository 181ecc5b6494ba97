use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty bracket expression")]
    EmptyBracket,
    #[error("malformed coefficient {token:?} in segment {segment}")]
    MalformedToken { segment: usize, token: String },
    #[error("segment {segment} has {found} coefficients, expected {expected}")]
    SegmentLength {
        segment: usize,
        found: usize,
        expected: usize,
    },
    #[error("bracket has {found} segments; {n_parties} parties need {n_parties} (or {} without full correlators)", .n_parties - 1)]
    SegmentCount { found: usize, n_parties: usize },
    #[error("at least {min} parties are required, got {found}")]
    TooFewParties { found: usize, min: usize },
    #[error("coefficient key (k={k}, m={m}) is invalid for {n_parties} parties")]
    InvalidKey { k: usize, m: usize, n_parties: usize },
    #[error("party count mismatch: expected {expected}, got {found}")]
    PartyMismatch { expected: usize, found: usize },
    #[error("unknown inequality {0:?}")]
    UnknownInequality(String),
    #[error("{what} = {value} exceeds the supported limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("amplitudes are not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expectation value has imaginary part {0:e}")]
    ComplexExpectation(f64),
    #[error("operation requires qubits, got local dimension {0}")]
    NotQubits(usize),
    #[error("observable Bloch vector has norm {0}, expected 1")]
    NotUnitBloch(f64),
    #[error("polynomial contains full {0}-party correlators")]
    FullCorrelatorPresent(usize),
    #[error("local bound must be nonzero")]
    ZeroBound,
    #[error("quantum value must be positive, got {0}")]
    NonPositiveQuantumValue(f64),
    #[error("inequality is not valid: maximum over vertices {max} exceeds bound {bound}")]
    InvalidInequality { max: String, bound: String },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("polytope has dimension {dimension} < ambient dimension {ambient}")]
    NotFullDimensional { dimension: usize, ambient: usize },
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
