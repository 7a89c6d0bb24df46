use thiserror::Error;

/// Errors raised by the constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HoweError {
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("weight entries must be weakly decreasing, got {0:?}")]
    NotDominant(Vec<i64>),
    #[error("partition parts must be positive and weakly decreasing, got {0:?}")]
    InvalidPartition(Vec<u32>),
    #[error("shape mismatch: expected {expected:?}, got {actual:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("matrix dimensions require n >= m >= 1, got n={n}, m={m}")]
    BadDimensions { n: usize, m: usize },
    #[error("matrix is not skew-hermitian (deviation {0:e})")]
    NotSkewHermitian(f64),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("homogeneous coordinate vector is zero")]
    ZeroVector,
    #[error("level k must be positive")]
    ZeroLevel,
    #[error("value {x} lies outside the moment image [-{k}, 0]")]
    OutsideMomentImage { x: f64, k: u32 },
    #[error("invalid sigma vector: {0}")]
    InvalidSigma(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
    #[error("bracket convention self-check failed: fundamental field {field:e}, bracket {bracket:e}")]
    SignConvention { field: f64, bracket: f64 },
}

pub type Result<T> = std::result::Result<T, HoweError>;
