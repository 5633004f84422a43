use super::local::{apply_local_channel, pauli_conjugate};
use super::{povm_sqrt, DenseOperator, DenseState, LocalOperator, Outcome, Setting};
use crate::error::{check_sharpness, Error, Result};
use crate::scenario::{validate_shape, PauliLetter, PauliString};

/// One weighted Pauli conjugation `c · P ρ P` of the expanded channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationTerm {
    pub coefficient: f64,
    pub conjugator: PauliString,
}

fn check_round_inputs(state: &DenseState, lambda_k: f64, recycled: &[usize]) -> Result<()> {
    check_sharpness(lambda_k)?;
    let n = state.n_qubits();
    if let Some(&q) = recycled.iter().find(|&&q| q > n) {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: n,
        });
    }
    validate_shape(n, recycled)
}

fn kraus_pair(setting: Setting, lambda_k: f64) -> Result<[LocalOperator; 2]> {
    Ok([
        povm_sqrt(setting, Outcome::Plus, lambda_k)?,
        povm_sqrt(setting, Outcome::Minus, lambda_k)?,
    ])
}

/// One round of the setting-averaged, outcome-summed Lüders update on the
/// recycled qubits:
///
/// `ρ ↦ 2^-N0 Σ_I Σ_A (⊗ √E_{i_m,a_m}) ρ (⊗ √E_{i_m,a_m})`.
///
/// The sum runs over the `2^N0` setting combinations. For a fixed setting
/// combination the outcome sum factorizes over sites, so it is applied one
/// qubit at a time with that site's Kraus pair.
pub fn lueders_round(state: &DenseState, lambda_k: f64, recycled: &[usize]) -> Result<DenseState> {
    check_round_inputs(state, lambda_k, recycled)?;
    let n = state.n_qubits();
    let x_pair = kraus_pair(Setting::X, lambda_k)?;
    let z_pair = kraus_pair(Setting::Z, lambda_k)?;
    let n_settings = 1usize << recycled.len();

    let mut acc = DenseOperator::zeros(state.dim(), state.dim());
    for combo in 0..n_settings {
        let mut sigma = state.matrix().clone();
        for (m, &q) in recycled.iter().enumerate() {
            let pair = if combo >> m & 1 == 0 { &x_pair } else { &z_pair };
            sigma = apply_local_channel(&sigma, n, q, pair);
        }
        acc += sigma;
    }
    acc.unscale_mut(n_settings as f64);
    Ok(DenseState::from_matrix_unchecked(n, acc))
}

/// Pauli-conjugation expansion of one round: for every setting combination
/// `I` and every subset of recycled sites, the conjugator places `σ_{i_m}` on
/// the chosen sites with weight `Π(1 - Λ^{i_m}) Π(1 + Λ^{i_m}) / 4^N0`, where
/// `Λ^x = √(1-λ²)` and `Λ^z = 0`.
pub fn conjugation_terms(
    n_qubits: usize,
    lambda_k: f64,
    recycled: &[usize],
) -> Result<Vec<ConjugationTerm>> {
    check_sharpness(lambda_k)?;
    validate_shape(n_qubits, recycled)?;
    let n0 = recycled.len();
    let big_lambda_x = (1.0 - lambda_k * lambda_k).sqrt();
    let norm = (1u64 << (2 * n0)) as f64;

    let mut terms = Vec::with_capacity(1 << (2 * n0));
    for combo in 0..1usize << n0 {
        for subset in 0..1usize << n0 {
            let mut letters = vec![PauliLetter::I; n_qubits];
            let mut coefficient = 1.0;
            for (m, &q) in recycled.iter().enumerate() {
                let (letter, big_lambda) = if combo >> m & 1 == 0 {
                    (PauliLetter::X, big_lambda_x)
                } else {
                    (PauliLetter::Z, 0.0)
                };
                if subset >> m & 1 == 1 {
                    letters[q - 1] = letter;
                    coefficient *= 1.0 - big_lambda;
                } else {
                    coefficient *= 1.0 + big_lambda;
                }
            }
            terms.push(ConjugationTerm {
                coefficient: coefficient / norm,
                conjugator: PauliString::from_letters(letters),
            });
        }
    }
    Ok(terms)
}

/// Same channel as [`lueders_round`], evaluated as a weighted sum of Pauli
/// conjugations instead of Kraus square roots.
pub fn lueders_round_expanded(
    state: &DenseState,
    lambda_k: f64,
    recycled: &[usize],
) -> Result<DenseState> {
    check_round_inputs(state, lambda_k, recycled)?;
    let n = state.n_qubits();
    let mut acc = DenseOperator::zeros(state.dim(), state.dim());
    for term in conjugation_terms(n, lambda_k, recycled)? {
        if term.coefficient == 0.0 {
            continue;
        }
        acc += pauli_conjugate(state.matrix(), &term.conjugator).scale(term.coefficient);
    }
    Ok(DenseState::from_matrix_unchecked(n, acc))
}
