use crate::error::Result;
use crate::scenario::{recycled_exponent_counts, validate_shape};

/// Multiplies `x` by `2^exp` without overflowing the intermediate power.
pub(crate) fn scale_pow2(mut x: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        x *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
    }
    x * 2f64.powi(exp as i32)
}

/// `R = 2^(N-1) - 1 - Σ_{θ,t} C(N0,2θ-t) C(N-N0,t) Q^(2θ-t)` given `ln Q`.
///
/// Evaluated as `Σ_e M_e (1 - Q^e)`, with `M_e` the number of witness Z
/// terms carrying `e` Z letters on recycled qubits, so that no cancellation
/// occurs when `Q` is close to 1.
pub fn bracket_from_ln_q(n_qubits: usize, n_recycled: usize, ln_q: f64) -> f64 {
    recycled_exponent_counts(n_qubits, n_recycled)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &m)| m != 0)
        .map(|(e, &m)| m as f64 * -(e as f64 * ln_q).exp_m1())
        .sum()
}

/// Bracket `R_k` from the prefix `Λ_1..Λ_{k-1}`; zero for an empty prefix.
pub fn bracket_general(n_qubits: usize, n_recycled: usize, big_lambda_prefix: &[f64]) -> Result<f64> {
    let recycled: Vec<usize> = (1..=n_recycled).collect();
    validate_shape(n_qubits, &recycled)?;
    for &b in big_lambda_prefix {
        crate::error::check_sharpness(b)?;
    }
    let ln_q: f64 = big_lambda_prefix
        .iter()
        .map(|&b| (0.5 * (b - 1.0)).ln_1p())
        .sum();
    Ok(bracket_from_ln_q(n_qubits, n_recycled, ln_q))
}
