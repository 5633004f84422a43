use thiserror::Error;

/// Errors raised by the simulator and the sequence machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidConfig(String),

    #[error("invalid state family: {0}")]
    InvalidFamily(String),

    #[error("sharpness parameter {value} outside [0, 1]")]
    SharpnessOutOfRange { value: f64 },

    #[error("invalid Pauli letter {letter:?} at position {position}")]
    InvalidPauliLetter { letter: char, position: usize },

    #[error("Pauli word has length {found}, expected {expected}")]
    PauliLength { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dense simulation of {n_qubits} qubits refused: cap is {cap} qubits")]
    DenseCapExceeded { n_qubits: usize, cap: usize },

    #[error("generator {kind} does not apply to N={n_qubits}, N0={n_recycled}")]
    GeneratorMismatch {
        kind: &'static str,
        n_qubits: usize,
        n_recycled: usize,
    },

    #[error("round index {k} out of range (1..={available})")]
    RoundOutOfRange { k: usize, available: usize },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("no closed form for <{observable}> above the dense cap")]
    NoClosedForm { observable: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_sharpness(value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::SharpnessOutOfRange { value })
    }
}
