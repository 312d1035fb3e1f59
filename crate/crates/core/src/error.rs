use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{len} entries do not fill a {dim}x{dim} matrix")]
    Shape { dim: usize, len: usize },

    #[error("operator is not Hermitian (max |M - M†| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("unsupported dimension: expected {expected}, found {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("Bloch vector norm {norm} exceeds 1")]
    InvalidBlochVector { norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pairing value {value} lies outside [0, 1]")]
    InvalidPairing { value: f64 },

    #[error("a separable certificate is required: {0}")]
    CertificateRequired(&'static str),

    #[error("unsupported oracle: {0}")]
    UnsupportedOracle(String),

    #[error("accounting violation at index {index}: residual {residual:.3e} is negative")]
    AccountingViolation { index: usize, residual: f64 },

    #[error("invalid strategy: {0}")]
    StrategyInvalid(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unknown scenario `{name}`; registered: {}", registry.join(", "))]
    NotFound { name: String, registry: Vec<String> },

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
}
