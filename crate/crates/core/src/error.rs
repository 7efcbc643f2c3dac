use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported audio format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt file: {0}")]
    CorruptFile(String),
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("signal is empty")]
    EmptySignal,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("code magnitude {magnitude} out of range for {nq}-bit quantizer")]
    CodeOutOfRange { magnitude: u8, nq: u8 },
    #[error("frame of {len} samples is too short for prediction order {order}")]
    FrameTooShort { len: usize, order: usize },
    #[error("normal equations are numerically singular")]
    SingularNormalEquations,
    #[error("bad magic")]
    BadMagic,
    #[error("bitstream version {found} not supported (expected {expected})")]
    VersionMismatch { found: u16, expected: u16 },
    #[error("truncated payload: need {needed} bytes, found {found}")]
    TruncatedPayload { needed: usize, found: usize },
    #[error("invalid bitstream header: {0}")]
    InvalidHeader(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("no frame has a finite SNR")]
    NoScorableFrames,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
