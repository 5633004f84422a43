//! Brute-force density-matrix simulation used as ground truth.
//!
//! States are `2^N x 2^N` complex matrices with qubit 1 as the most
//! significant bit of the basis index. Everything here is exponential in `N`
//! and guarded by [`DenseCap`].

mod bisep;
mod channel;
mod expect;
mod ledger;
mod local;
mod povm;
mod state;
mod witness;

use num_complex::Complex64;

pub use bisep::{
    all_bipartitions, random_biseparable_mixture, random_biseparable_state, schmidt_rank,
    Bipartition,
};
pub use channel::{conjugation_terms, lueders_round, lueders_round_expanded, ConjugationTerm};
pub use expect::{expectation, Observable};
pub use ledger::{oracle_ledger, simulate_rounds};
pub use local::{apply_local_channel, conjugate_local, pauli_conjugate};
pub use povm::{povm_element, povm_sqrt, LocalOperator, Outcome, Setting};
pub use state::{build_initial_state, build_initial_state_capped, DenseState, StateDiagnostics};
pub use witness::{materialize_witness, materialize_witness_product, pauli_matrix};

use crate::error::{Error, Result};

pub type DenseOperator = nalgebra::DMatrix<Complex64>;

/// Hermiticity and trace tolerance for valid states.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-10;

/// Limit on the number of qubits simulated densely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DenseCap {
    /// Up to 10 qubits (about 16 MB per matrix).
    #[default]
    Default,
    /// Up to 12 qubits (about 268 MB per matrix), opt-in.
    Extended,
}

impl DenseCap {
    pub fn limit(self) -> usize {
        match self {
            DenseCap::Default => 10,
            DenseCap::Extended => 12,
        }
    }

    pub fn check(self, n_qubits: usize) -> Result<()> {
        if n_qubits > self.limit() {
            Err(Error::DenseCapExceeded {
                n_qubits,
                cap: self.limit(),
            })
        } else {
            Ok(())
        }
    }
}
