use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be a prime below 2^62")]
    InvalidModulus(u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree bound mismatch: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },
    #[error("modulus mismatch")]
    ModulusMismatch,
    #[error("middle product constraint violated: {da} + {db} - 1 != 2*{k} + {d}")]
    DegreeConstraint { da: usize, db: usize, d: usize, k: usize },
    #[error("polynomial of bound {bound} does not fit in {limit}")]
    BoundOverflow { bound: usize, limit: usize },
    #[error("family does not follow the expected degree profile: {0}")]
    ProfileMismatch(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("perturbation covariance is not positive definite")]
    CovarianceNotPositiveDefinite,
    #[error("sigma {sigma:.4e} below the required {required:.4e}")]
    SigmaTooSmall { sigma: f64, required: f64 },
    #[error("trapdoor does not match family")]
    TrapdoorMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("identity depth {depth} outside 1..={max}")]
    DepthOutOfRange { depth: usize, max: usize },
    #[error("plaintext coefficients must be binary")]
    NonBinaryPlaintext,
    #[error("malformed file: {0}")]
    Format(String),
    #[error("no prime modulus below 2^62 satisfies the correctness bound at depth {depth}")]
    NoFeasibleQ { depth: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
