use num_complex::Complex64;

use super::DenseState;
use crate::error::{Error, Result};
use crate::scenario::{PauliString, WitnessSpec};

/// Something whose expectation `Tr(O ρ)` can be evaluated on a dense state.
pub trait Observable {
    fn n_qubits(&self) -> usize;
    fn trace_with(&self, state: &DenseState) -> Complex64;
}

impl Observable for PauliString {
    fn n_qubits(&self) -> usize {
        self.len()
    }

    fn trace_with(&self, state: &DenseState) -> Complex64 {
        // P|c> = i^{#Y} (-1)^{c·signs} |c ⊕ flips>
        let rho = state.matrix();
        let flip = self.flip_mask();
        let sign = self.sign_mask();
        let sum: Complex64 = (0..state.dim())
            .map(|c| {
                let v = rho[(c, c ^ flip)];
                if (c & sign).count_ones() % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .sum();
        sum * Complex64::i().powu(self.y_count() as u32)
    }
}

impl Observable for WitnessSpec {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn trace_with(&self, state: &DenseState) -> Complex64 {
        let s1 = PauliString::all_x(self.n_qubits).trace_with(state);
        let z_sum: Complex64 = self
            .z_groups
            .iter()
            .flat_map(|g| g.members.iter())
            .map(|m| m.trace_with(state))
            .sum();
        state.matrix().trace() * self.identity_coeff + s1 * self.s1_coeff + z_sum * self.z_coeff
    }
}

/// `Tr(O ρ)`, which is real for Hermitian `O`.
pub fn expectation<O: Observable + ?Sized>(state: &DenseState, observable: &O) -> Result<f64> {
    if observable.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: state.n_qubits(),
            found: observable.n_qubits(),
        });
    }
    let value = observable.trace_with(state);
    assert!(
        value.im.abs() <= 1e-12,
        "expectation has imaginary part {}",
        value.im
    );
    Ok(value.re)
}
