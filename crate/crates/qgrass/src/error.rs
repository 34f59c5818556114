use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("generator u[{row},{col}] out of range for n = {n}")]
    GeneratorRange { n: u8, row: u8, col: u8 },

    #[error("ambient size mismatch: {0} vs {1}")]
    SizeMismatch(u8, u8),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("index set {set} is not admissible for n = {n}")]
    BadIndexSet { set: String, n: u8 },

    #[error("no twisted derivation at rung j = {j} for (n, r) = ({n}, {r})")]
    MissingRung { n: u8, r: u8, j: u8 },

    #[error("all sample points hit a denominator pole")]
    PoleSampling,

    #[error("dimension mismatch: {0}")]
    Dim(String),

    #[error("invalid parameter: {0}")]
    Param(String),
}

pub type Result<T> = std::result::Result<T, Error>;
