use std::io;

/// Errors produced by the filter, solver, transform and file layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("filter length {0} is not a positive even number")]
    FilterLength(usize),

    #[error("value at position {position} is not finite")]
    NonFinite { position: usize },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("pinned position {position} is outside 1..={len}")]
    PinOutOfRange { position: usize, len: usize },

    #[error("closed form has a vanishing divisor: {0}")]
    ZeroDivisor(&'static str),

    #[error("signal length {m} invalid for a {taps}-tap bank: length must be even and at least 4n = {min}")]
    SignalLength { m: usize, taps: usize, min: usize },

    #[error("signal of length {m} is too short to extend by {need} samples")]
    TooShortToExtend { m: usize, need: usize },

    #[error("image {rows}x{cols} invalid for a {taps}-tap bank: both dimensions must be even and at least 4n = {min}")]
    ImageDims {
        rows: usize,
        cols: usize,
        taps: usize,
        min: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
