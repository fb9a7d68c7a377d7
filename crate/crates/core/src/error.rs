use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("noise parameter {0} outside [0, 1]")]
    NoiseOutOfRange(f64),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid post-processing: {0}")]
    InvalidPostProcessing(String),

    #[error("expected a unit vector, got norm {norm}")]
    NotUnit { norm: f64 },

    #[error("target and guess are orthogonal (|a.b| = {dot:e})")]
    OrthogonalPair { dot: f64 },

    #[error("marginal {slot} is not an unbiased noisy version of its target (deviation {deviation:e})")]
    RotatedMarginal { slot: usize, deviation: f64 },

    #[error("parallel or antiparallel pair has no two-direction construction")]
    DegeneratePair,

    #[error("unknown configuration id `{0}`")]
    UnknownConfig(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("bases are not mutually unbiased: {0}")]
    NotMutuallyUnbiased(String),

    #[error("superposition normalization {found} disagrees with closed form {expected}")]
    PhaseConvention { expected: f64, found: f64 },

    #[error("witness coefficient denominator vanishes for d = {0}")]
    CoefficientSingularity(usize),

    #[error("witness invariant violated: {0}")]
    WitnessInvariant(String),

    #[error("sign enumeration over {n} settings exceeds the cap of {max}")]
    TooManySettings { n: usize, max: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("malformed POVM data: {0}")]
    InvalidFormat(String),

    #[error("tolerance `{name}` must be strictly positive, got {value}")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
