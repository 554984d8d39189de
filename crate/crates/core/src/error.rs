use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("h*h deviates from c*I by {deviation:e}")]
    NotInvolutory { deviation: f64 },
    #[error("basis is not orthonormal (max Gram deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("{n_qubits} qubits exceeds the supported maximum of {max}")]
    DimensionTooLarge { n_qubits: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("number of physical qubits must be even, got {0}")]
    OddN(usize),
    #[error("need at least {min} physical qubits, got {n}")]
    NTooSmall { n: usize, min: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("two-qubit gate needs 1 <= k < l <= {max}, got k={k}, l={l}")]
    BadIndices { k: usize, l: usize, max: usize },
    #[error("evolution leaks out of the code space (||M^dag M - I|| = {leakage:e})")]
    LeakageDetected { leakage: f64 },
    #[error("time step {dt} does not split total time {total} into whole cycles")]
    BadPartition { dt: f64, total: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
