use super::{DenseOperator, LocalOperator};
use crate::scenario::PauliString;

fn bit_of(n_qubits: usize, qubit: usize) -> usize {
    1 << (n_qubits - qubit)
}

/// `K ρ K†` with `K` acting on 1-based `qubit` and identity elsewhere.
pub fn conjugate_local(
    rho: &DenseOperator,
    n_qubits: usize,
    qubit: usize,
    k: &LocalOperator,
) -> DenseOperator {
    let dim = rho.nrows();
    let bit = bit_of(n_qubits, qubit);
    let m = k.matrix();
    let mut left = DenseOperator::zeros(dim, dim);
    // rows: (K ⊗ I) ρ
    for r0 in (0..dim).filter(|r| r & bit == 0) {
        let r1 = r0 | bit;
        for c in 0..dim {
            let a = rho[(r0, c)];
            let b = rho[(r1, c)];
            left[(r0, c)] = m[(0, 0)] * a + m[(0, 1)] * b;
            left[(r1, c)] = m[(1, 0)] * a + m[(1, 1)] * b;
        }
    }
    // columns: (...) (K† ⊗ I)
    let mut out = DenseOperator::zeros(dim, dim);
    for c0 in (0..dim).filter(|c| c & bit == 0) {
        let c1 = c0 | bit;
        for r in 0..dim {
            let a = left[(r, c0)];
            let b = left[(r, c1)];
            out[(r, c0)] = a * m[(0, 0)].conj() + b * m[(0, 1)].conj();
            out[(r, c1)] = a * m[(1, 0)].conj() + b * m[(1, 1)].conj();
        }
    }
    out
}

/// `Σ_a K_a ρ K_a†` on one qubit.
pub fn apply_local_channel(
    rho: &DenseOperator,
    n_qubits: usize,
    qubit: usize,
    kraus: &[LocalOperator],
) -> DenseOperator {
    let dim = rho.nrows();
    kraus
        .iter()
        .fold(DenseOperator::zeros(dim, dim), |acc, k| {
            acc + conjugate_local(rho, n_qubits, qubit, k)
        })
}

/// `P ρ P` for a Pauli string `P`.
pub fn pauli_conjugate(rho: &DenseOperator, p: &PauliString) -> DenseOperator {
    let dim = rho.nrows();
    let flip = p.flip_mask();
    let sign = p.sign_mask();
    let parity = |i: usize| ((i & sign).count_ones() & 1) as u8;
    DenseOperator::from_fn(dim, dim, |r, s| {
        let (rf, sf) = (r ^ flip, s ^ flip);
        let v = rho[(rf, sf)];
        if parity(rf) ^ parity(sf) == 1 {
            -v
        } else {
            v
        }
    })
}
