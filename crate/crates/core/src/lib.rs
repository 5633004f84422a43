//! Simulation and analysis of sequential genuine-multipartite-entanglement
//! detection when a fixed subset of qubits is handed on to successive sets of
//! observers performing unsharp measurements.
//!
//! The crate has two independent routes to every expectation value:
//!
//! * [`dense`] simulates the full `2^N x 2^N` density matrix through the
//!   outcome-averaged Lüders channel and serves as ground truth for small `N`.
//! * [`transfer`] propagates Pauli observables analytically through the
//!   channel's per-qubit attenuation factors and scales to arbitrary `N`.
//!
//! [`sequence`] builds the sharpness-parameter sequences and detection counts
//! on top of the analytic route, and [`scenario`] holds the shared vocabulary.

pub mod dense;
pub mod error;
pub mod scenario;
pub mod sequence;
pub mod transfer;

pub use error::{Error, Result};
pub use scenario::{
    build_witness_spec, enumerate_z_terms, IntervalMode, PauliLetter, PauliString, S1Mode,
    ScenarioConfig, StateFamily, WitnessSpec, ZTermGroup,
};
pub use sequence::{GeneratorKind, SequenceStatus, SharpnessSequence};
