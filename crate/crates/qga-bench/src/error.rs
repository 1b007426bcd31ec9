//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },

    #[error("matrix trace is {trace:.12}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite within slack {slack:.3e}")]
    NotPositiveSemidefinite { slack: f64 },

    #[error("vector norm is {norm:.12}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("Kraus operators violate completeness (deviation {deviation:.3e})")]
    KrausIncomplete { deviation: f64 },

    #[error("qubit index {index} out of range for {total} qubits")]
    QubitIndexOutOfRange { index: usize, total: usize },

    #[error("duplicate qubit index {index}")]
    DuplicateQubitIndex { index: usize },

    #[error("register index {index} out of range for {total} registers")]
    RegisterIndexOutOfRange { index: usize, total: usize },

    #[error("invalid register layout: {0}")]
    InvalidLayout(String),

    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("Hamiltonian is not diagonal in the computational basis")]
    NonDiagonalHamiltonian,

    #[error("spectrum must be nondecreasing")]
    SpectrumNotAscending,

    #[error("destination register is not blank (fidelity to |0..0> is {fidelity:.6})")]
    RegisterNotBlank { fidelity: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("all paired differences are zero; signed-rank test is undefined")]
    AllDifferencesZero,

    #[error("unknown preset {name:?}; valid presets: {available}")]
    UnknownPreset { name: String, available: String },

    #[error("seed fan-out collision for {0}")]
    SeedCollision(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code convention: configuration problems exit with 2,
    /// runtime failures with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::UnknownPreset { .. } | Error::InvalidArgument(_) => 2,
            _ => 1,
        }
    }
}
