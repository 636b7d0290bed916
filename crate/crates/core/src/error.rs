use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input matrix does not have full column rank.
    #[error("rank deficient")]
    RankDeficient,
    /// A full frame (n = m) has no orthogonal complement.
    #[error("no complement")]
    NoComplement,
    /// Matrix fails the symmetry tolerance.
    #[error("matrix is not symmetric (max asymmetry {max_asym:e})")]
    NotSymmetric { max_asym: f64 },
    /// Operands have incompatible shapes.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Consecutive eigenvalue ratios are all below the gap floor; the
    /// function is a poor ridge-approximation candidate.
    #[error("no spectral gap")]
    NoSpectralGap,
    /// Data contains NaN or infinite entries.
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The conditional-mean oracle only supports the standard Gaussian density.
    #[error("unsupported density")]
    UnsupportedDensity,
    /// Tensor-product quadrature is capped at four ambient dimensions.
    #[error("tensor quadrature infeasible for m = {m} (limit {limit})")]
    TensorQuadratureInfeasible { m: usize, limit: usize },
    /// Relative test error is undefined when a test output is zero.
    #[error("relative error undefined")]
    RelativeErrorUndefined,
    /// A reference eigenvalue of zero makes the relative metric undefined.
    #[error("zero reference eigenvalue at index {0}")]
    ZeroReferenceEigenvalue(usize),
    /// Eigenvalue tail entries must be nonnegative.
    #[error("negative tail eigenvalue {0:e}")]
    NegativeTail(f64),
    /// Requested built-in test function does not exist.
    #[error("unknown test function \"{0}\"")]
    UnknownFunction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
