use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(String),
    #[error("interpolated coefficient of t^{degree} is {value}, not an integer")]
    NonIntegerCoefficient { degree: usize, value: String },
    #[error("series has zero constant term and cannot be inverted")]
    NonInvertibleSeries,
    #[error("series exponential needs a zero constant term")]
    NonZeroConstantTerm,

    #[error("arrangement already contains box walls")]
    AlreadyBoxed,
    #[error("modulus {0} must be odd and at least 3")]
    EvenModulus(u64),
    #[error("hyperplane {0} is invalid for dimension {1}")]
    InvalidHyperplane(String, usize),
    #[error("count at verification modulus {modulus} is {counted}, interpolated polynomial gives {predicted}")]
    VerificationModulusMismatch {
        modulus: u64,
        counted: String,
        predicted: String,
    },
    #[error("n = {n} exceeds the cap of {cap} for {what} (raise it with --cap-override)")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("{what} is defined only for n >= {min} (got n = {n})")]
    DomainTooSmall { what: &'static str, n: usize, min: usize },
    #[error("EGF coefficient {index} times {index}! is {value}, not an integer")]
    NonIntegerEGFCoefficient { index: usize, value: String },
    #[error("evaluation point {0} must be odd and at least 3")]
    InvalidEvaluationPoint(i64),

    #[error("half-order does not match any canonical form: {0}")]
    NotCanonical(String),
    #[error("blocks do not partition [{0}]")]
    NotAPartition(usize),
    #[error("point lies on hyperplane {0}")]
    PointOnHyperplane(String),
    #[error("wrong point dimension: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("graph is not a threshold graph")]
    NotThreshold,
    #[error("coloring is not produced by any colored threshold construction")]
    InvalidColoring,
    #[error("invalid signed permutation: {0}")]
    InvalidSignedPermutation(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("search space of {points} lattice points exceeds the cap of {cap}")]
    SearchSpaceTooLarge { points: u128, cap: u128 },

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
