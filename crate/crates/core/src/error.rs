use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("threshold {a} outside [0, {k}]")]
    ThresholdOutOfRange { k: u32, a: String },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("box side must be positive")]
    ZeroSide,
    #[error("fold parameter l = {0} must be at least 2")]
    FoldTooSmall(u32),
    #[error("stripe offset must be positive, got {0}")]
    NonPositiveOffset(String),
    #[error("constant c = {0} outside (0, 1]")]
    ConstantOutOfRange(f64),
    #[error("alpha = {0} outside [1/2, 1)")]
    AlphaOutOfRange(f64),
    #[error("point {point:?} does not lie in {{1..{n}}}^{k}")]
    AmbientMismatch { point: Vec<u32>, n: u32, k: u32 },
    #[error("instance has {points} points, above the cap of {cap}")]
    InstanceTooLarge { points: u128, cap: u128 },
    #[error("no sign change of {what} on [{lo}, {hi}]")]
    NoSignChange {
        what: &'static str,
        lo: f64,
        hi: f64,
    },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
