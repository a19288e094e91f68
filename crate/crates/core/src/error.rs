use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("direction is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("cannot normalize a zero or non-finite vector")]
    DegenerateVector,

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix has {rows}x{cols} shape but {len} entries")]
    BadShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("expectation value has imaginary residue {residue:e}")]
    ImaginaryResidue { residue: f64 },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid integration config: {0}")]
    InvalidConfig(String),

    #[error("model `{model}` produced outcome {value} outside [-1, 1] at lambda = {lambda}")]
    OutcomeOutOfRange {
        model: String,
        lambda: String,
        value: f64,
    },

    #[error("family `{family}` does not apply to this state: {reason}")]
    FamilyMismatch { family: String, reason: String },

    #[error("invalid joint outcome table: {0}")]
    InvalidTable(String),

    #[error("correlation {value} lies outside [-1, 1] (tolerance {tolerance:e})")]
    CorrelationOutOfRange { value: f64, tolerance: f64 },

    #[error("an integration config is required for a hidden-variable source")]
    MissingIntegrationConfig,

    #[error("unknown {kind} `{name}`; available: {}", available.join(", "))]
    UnknownName {
        kind: &'static str,
        name: String,
        available: Vec<String>,
    },
}
