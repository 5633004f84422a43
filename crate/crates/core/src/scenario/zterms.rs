use itertools::Itertools;

use super::{validate_shape, PauliLetter, PauliString};
use crate::error::{Error, Result};

/// Largest `N` for which member strings are materialized explicitly.
pub const MAX_ENUMERATED_QUBITS: usize = 24;

/// All even-weight Z strings with `2 * theta` Z letters, `t` of which sit on
/// non-recycled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ZTermGroup {
    pub theta: usize,
    pub t: usize,
    pub count: u64,
    pub members: Vec<PauliString>,
}

impl ZTermGroup {
    /// Number of Z letters on recycled qubits, `2 * theta - t`.
    pub fn recycled_z(&self) -> usize {
        2 * self.theta - self.t
    }
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // Each partial product C(n-k+i, i) is an integer.
    (1..=k as u128).fold(1u128, |acc, i| acc * (n as u128 - k as u128 + i) / i) as u64
}

/// `(theta, t)` ranges: `theta = 1..=N/2`, `t` from `max(0, 2θ-N0)` to `min(2θ, N-N0)`.
fn group_indices(n_qubits: usize, n_recycled: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n_qubits / 2).flat_map(move |theta| {
        let t_lo = (2 * theta).saturating_sub(n_recycled);
        let t_hi = (2 * theta).min(n_qubits - n_recycled);
        (t_lo..=t_hi).map(move |t| (theta, t))
    })
}

/// Enumerates every `S^q_{2θ,t}` term of the witness, grouped by `(θ, t)`.
///
/// The member count over all groups is `2^(N-1) - 1`.
pub fn enumerate_z_terms(n_qubits: usize, recycled: &[usize]) -> Result<Vec<ZTermGroup>> {
    validate_shape(n_qubits, recycled)?;
    if n_qubits > MAX_ENUMERATED_QUBITS {
        return Err(Error::InvalidConfig(format!(
            "explicit Z-term enumeration limited to N <= {MAX_ENUMERATED_QUBITS}"
        )));
    }
    let n_recycled = recycled.len();
    let others: Vec<usize> = (1..=n_qubits).filter(|q| !recycled.contains(q)).collect();

    Ok(group_indices(n_qubits, n_recycled)
        .map(|(theta, t)| {
            let on_recycled = 2 * theta - t;
            let members: Vec<PauliString> = recycled
                .iter()
                .copied()
                .combinations(on_recycled)
                .cartesian_product(others.iter().copied().combinations(t).collect::<Vec<_>>())
                .map(|(a, b)| {
                    let sites: Vec<usize> = a.into_iter().chain(b).collect();
                    PauliString::on_sites(n_qubits, &sites, PauliLetter::Z)
                })
                .collect();
            ZTermGroup {
                theta,
                t,
                count: binomial(n_recycled, on_recycled) * binomial(n_qubits - n_recycled, t),
                members,
            }
        })
        .collect())
}

/// Number of witness Z terms with exactly `e` Z letters on recycled qubits,
/// indexed by `e = 0..=N0`. Valid for any `N` up to 63 without enumeration.
pub fn recycled_exponent_counts(n_qubits: usize, n_recycled: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n_recycled + 1];
    for (theta, t) in group_indices(n_qubits, n_recycled) {
        let e = 2 * theta - t;
        counts[e] += binomial(n_recycled, e) * binomial(n_qubits - n_recycled, t);
    }
    counts
}
