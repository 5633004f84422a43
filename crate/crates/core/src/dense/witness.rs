use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DenseCap, DenseOperator};
use crate::error::{check_sharpness, Result};
use crate::scenario::{PauliString, ScenarioConfig, WitnessSpec};

/// Dense matrix of a Pauli string, built from its flip and sign masks.
pub fn pauli_matrix(p: &PauliString) -> DenseOperator {
    let dim = 1usize << p.len();
    let flip = p.flip_mask();
    let sign = p.sign_mask();
    let phase = Complex64::i().powu(p.y_count() as u32);
    let mut m = DenseOperator::zeros(dim, dim);
    for c in 0..dim {
        let s = if (c & sign).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        m[(c ^ flip, c)] = phase * s;
    }
    m
}

/// Pauli-sum form: `a I + b S1 + c Σ_{θ,t,q} S^q_{2θ,t}`.
pub fn materialize_witness(spec: &WitnessSpec) -> Result<DenseOperator> {
    DenseCap::Default.check(spec.n_qubits)?;
    let dim = 1usize << spec.n_qubits;
    let mut w = DenseOperator::identity(dim, dim).scale(spec.identity_coeff);
    w += pauli_matrix(&PauliString::all_x(spec.n_qubits)).scale(spec.s1_coeff);
    for member in spec.z_groups.iter().flat_map(|g| g.members.iter()) {
        w += pauli_matrix(member).scale(spec.z_coeff);
    }
    Ok(w)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn kron_chain(factors: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

/// Product form:
/// `3I - 2[(I + λ^N0 S1)/2 + Π_{m=2..N} (I + S_m)/2]` with
/// `S1 = X⊗...⊗X` and `S_m = Z_{m-1} Z_m`, built from Kronecker products.
pub fn materialize_witness_product(config: &ScenarioConfig, lambda_k: f64) -> Result<DenseOperator> {
    check_sharpness(lambda_k)?;
    let n = config.n_qubits();
    DenseCap::Default.check(n)?;
    let dim = 1usize << n;
    let id2 = DMatrix::<Complex64>::identity(2, 2);
    let x = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let z = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    let id = DenseOperator::identity(dim, dim);

    let s1 = kron_chain(&vec![x; n]);
    let mut chain = id.clone();
    for m in 2..=n {
        let factors: Vec<_> = (1..=n)
            .map(|q| if q == m - 1 || q == m { z.clone() } else { id2.clone() })
            .collect();
        let s_m = kron_chain(&factors);
        chain *= (&id + s_m).unscale(2.0);
    }
    let lambda_pow = lambda_k.powi(config.n_recycled() as i32);
    let bracket = (&id + s1.scale(lambda_pow)).unscale(2.0) + chain;
    Ok(id.scale(3.0) - bracket.scale(2.0))
}
