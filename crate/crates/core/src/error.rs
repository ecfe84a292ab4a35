use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be at least 1")]
    ZeroDimension,

    #[error("ambient dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("coordinate subset must be non-empty")]
    EmptySubset,

    #[error("coordinate index {index} outside 1..={dim}")]
    CoordinateOutOfRange { index: usize, dim: usize },

    #[error("exponent {exponent} with power {power} is not integrable against r dr on [0,1]")]
    NonIntegrable { exponent: i64, power: usize },

    #[error("radial profile is unbounded or non-finite near r = {at}")]
    UnboundedProfile { at: f64 },

    #[error("non-separable radial profiles are supported for dim <= 3 only (got {dim})")]
    NonSeparableTooLarge { dim: usize },

    #[error("exact arithmetic requested for a profile that is not a rational polynomial")]
    NotExact,

    #[error("projection term exceeds the norm term by {excess:e}; Cauchy-Schwarz violated")]
    CauchySchwarz { excess: f64 },

    #[error("inner cap {given} too small, need at least {required}")]
    InnerCapTooSmall { given: u32, required: u32 },

    #[error("basis size {size} exceeds the guard of {limit}")]
    BasisTooLarge { size: usize, limit: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi iteration failed to converge in {sweeps} sweeps (off-diagonal {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("kernel point must satisfy |p| < 1 (got {modulus})")]
    KernelPointOutside { modulus: f64 },

    #[error("truncated kernel keeps only {mass:.6} of its mass; raise the degree cap to at least {required}")]
    KernelTruncated { mass: f64, required: u32 },

    #[error("test vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("boundary point must be unimodular (|q| = {modulus})")]
    NotUnimodular { modulus: f64 },

    #[error("slicing requires dim >= 2")]
    SliceOfUnivariate,

    #[error("symbol is not a single monomial")]
    NotMonomial,

    #[error("symbol must be univariate, found dim {dim}")]
    NotUnivariate { dim: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}
