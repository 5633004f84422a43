//! Heisenberg-picture propagation of Pauli observables through the averaged
//! measurement channel.
//!
//! One round on a recycled qubit multiplies each Pauli letter by a fixed
//! factor: `I → 1`, `X → 1/2`, `Y → Λ/2`, `Z → (1+Λ)/2` with `Λ = √(1-λ²)`.
//! Non-recycled qubits are untouched. Expectations of Pauli strings therefore
//! factorize into products of per-round, per-qubit multipliers.

use std::collections::BTreeMap;

use crate::dense::{self, build_initial_state, DenseCap};
use crate::error::{check_sharpness, Error, Result};
use crate::scenario::witness::{identity_coeff, s1_coeff, z_coeff};
use crate::scenario::{
    enumerate_z_terms, recycled_exponent_counts, PauliLetter, PauliString, S1Mode,
    ScenarioConfig, StateFamily,
};

/// Above this many `k * N0` letter-rounds, attenuations are accumulated as
/// logarithms.
const LOG_SPACE_THRESHOLD: usize = 500;

/// `Λ = √(1-λ²)`.
pub fn big_lambda(lambda: f64) -> f64 {
    (1.0 - lambda * lambda).sqrt()
}

/// `ln((1+Λ)/2)` evaluated without cancellation for small `λ`:
/// `(1+Λ)/2 = 1 - λ² / (2(1+Λ))`.
pub fn ln_z_factor(lambda: f64) -> f64 {
    let big = big_lambda(lambda);
    (-(lambda * lambda) / (2.0 * (1.0 + big))).ln_1p()
}

/// Multiplier applied to `letter` by one averaged round.
pub fn round_factor(letter: PauliLetter, lambda_k: f64, is_recycled: bool) -> Result<f64> {
    check_sharpness(lambda_k)?;
    if !is_recycled {
        return Ok(1.0);
    }
    let big = big_lambda(lambda_k);
    Ok(match letter {
        PauliLetter::I => 1.0,
        PauliLetter::X => 0.5,
        PauliLetter::Y => 0.5 * big,
        PauliLetter::Z => 0.5 * (1.0 + big),
    })
}

/// Attenuation of `observable` after one round per entry of `lambdas`:
/// `<O>_{ρ_k} = propagate(O, [λ_1..λ_{k-1}]) · <O>_{ρ_1}`.
pub fn propagate(observable: &PauliString, lambdas: &[f64], recycled: &[usize]) -> Result<f64> {
    let n = observable.len();
    if let Some(&q) = recycled.iter().find(|&&q| q == 0 || q > n) {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: n,
        });
    }
    for &l in lambdas {
        check_sharpness(l)?;
    }
    let letters: Vec<PauliLetter> = recycled
        .iter()
        .map(|&q| observable.letter(q))
        .filter(|&l| l != PauliLetter::I)
        .collect();
    if letters.is_empty() {
        return Ok(1.0);
    }

    if lambdas.len() * recycled.len() > LOG_SPACE_THRESHOLD {
        // halves are counted exactly, everything else summed as logarithms
        let mut halves = 0i32;
        let mut log_sum = 0.0;
        for &l in lambdas {
            for &letter in &letters {
                match letter {
                    PauliLetter::X => halves += 1,
                    PauliLetter::Y => {
                        halves += 1;
                        log_sum += big_lambda(l).ln();
                    }
                    _ => log_sum += ln_z_factor(l),
                }
            }
        }
        Ok(log_sum.exp() * (-f64::from(halves)).exp2())
    } else {
        let mut product = 1.0;
        for &l in lambdas {
            for &letter in &letters {
                product *= round_factor(letter, l, true)?;
            }
        }
        Ok(product)
    }
}

/// `<S1>` of the initial state.
///
/// In `Oracle` mode this is `<X^{⊗N}>` on the actual state: evaluated on the
/// dense matrix when `N` is within the dense cap, otherwise from the
/// `|0..0><1..1|` coherence, `2 p1 √(a(1-a))`. `PaperLiteral` returns the
/// published `p1 √(a(1-a))` for the non-GHZ families.
pub fn initial_s1(family: StateFamily, n_qubits: usize, mode: S1Mode) -> Result<f64> {
    family.validate()?;
    let (p1, a) = family.coherent_part();
    match (family, mode) {
        (StateFamily::Ghz, _) => Ok(1.0),
        (_, S1Mode::PaperLiteral) => Ok(p1 * (a * (1.0 - a)).sqrt()),
        (_, S1Mode::Oracle) => {
            if DenseCap::Default.check(n_qubits).is_ok() {
                let rho = build_initial_state(family, n_qubits)?;
                dense::expectation(&rho, &PauliString::all_x(n_qubits))
            } else {
                Ok(2.0 * p1 * (a * (1.0 - a)).sqrt())
            }
        }
    }
}

/// Expectation of `observable` in the initial state `ρ_1`.
pub fn initial_expectation(
    family: StateFamily,
    observable: &PauliString,
    mode: S1Mode,
) -> Result<f64> {
    let n = observable.len();
    let letters = observable.letters();
    if letters.iter().all(|&l| l == PauliLetter::X) {
        return initial_s1(family, n, mode);
    }
    let z_only = letters
        .iter()
        .all(|&l| l == PauliLetter::I || l == PauliLetter::Z);
    if z_only && observable.weight().is_multiple_of(2) {
        // |0..0> and |1..1> are both +1 eigenvectors of even Z strings.
        return Ok(1.0);
    }
    if DenseCap::Default.check(n).is_err() {
        return Err(Error::NoClosedForm {
            observable: observable.to_string(),
        });
    }
    let rho = build_initial_state(family, n)?;
    dense::expectation(&rho, observable)
}

fn check_prefix(k: usize, lambdas: &[f64]) -> Result<()> {
    if k == 0 || lambdas.len() < k {
        return Err(Error::RoundOutOfRange {
            k,
            available: lambdas.len(),
        });
    }
    lambdas.iter().try_for_each(|&l| check_sharpness(l))
}

/// `<W_k>_{ρ_k}` from the Pauli decomposition and the transfer factors.
///
/// `lambdas[j]` is the sharpness used in round `j + 1`; rounds `1..k-1`
/// shape the state and `lambdas[k-1]` enters the witness itself.
pub fn witness_expectation_analytic(
    config: &ScenarioConfig,
    k: usize,
    lambdas: &[f64],
) -> Result<f64> {
    check_prefix(k, lambdas)?;
    let n = config.n_qubits();
    let n0 = config.n_recycled();
    let s1 = initial_s1(config.family(), n, config.s1_mode())? * x_attenuation(n0, k);
    let ln_q: f64 = lambdas[..k - 1].iter().map(|&l| ln_z_factor(l)).sum();
    let z_sum: f64 = recycled_exponent_counts(n, n0)
        .iter()
        .enumerate()
        .map(|(e, &count)| count as f64 * (e as f64 * ln_q).exp())
        .sum();
    Ok(identity_coeff(n) + s1_coeff(n0, lambdas[k - 1]) * s1 + z_coeff(n) * z_sum)
}

/// `(1/2)^{N0 (k-1)}`, exact as a power of two.
fn x_attenuation(n_recycled: usize, k: usize) -> f64 {
    (-((n_recycled * (k - 1)) as f64)).exp2()
}

/// Key of one entry in an [`ExpectationLedger`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum LedgerKey {
    S1,
    /// Shared value of every member of the `(θ, t)` group.
    ZGroup { theta: usize, t: usize },
    Pauli(PauliString),
    Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LedgerSource {
    Analytic,
    Oracle,
}

/// Per-round expectation values; `rounds[k-1]` holds the values in `ρ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationLedger {
    pub source: LedgerSource,
    pub rounds: Vec<BTreeMap<LedgerKey, f64>>,
}

impl ExpectationLedger {
    pub fn get(&self, k: usize, key: &LedgerKey) -> Option<f64> {
        self.rounds.get(k.checked_sub(1)?)?.get(key).copied()
    }

    /// Largest deviation over keys present in both ledgers, split into
    /// `(S1, Z strings, witness)`.
    pub fn max_deviation(&self, other: &ExpectationLedger) -> (f64, f64, f64) {
        let mut dev = (0.0f64, 0.0f64, 0.0f64);
        for (mine, theirs) in self.rounds.iter().zip(&other.rounds) {
            for (key, value) in mine {
                let Some(v) = theirs.get(key) else { continue };
                let d = (value - v).abs();
                match key {
                    LedgerKey::S1 => dev.0 = dev.0.max(d),
                    LedgerKey::ZGroup { .. } | LedgerKey::Pauli(_) => dev.1 = dev.1.max(d),
                    LedgerKey::Witness => dev.2 = dev.2.max(d),
                }
            }
        }
        dev
    }
}

/// Analytic ledger for rounds `1..=rounds`, using `lambdas[k-1]` as the
/// round-`k` sharpness. With `members` set, each Z-string member is also
/// recorded individually (requires explicit enumeration, `N <= 24`).
pub fn analytic_ledger(
    config: &ScenarioConfig,
    lambdas: &[f64],
    rounds: usize,
    members: bool,
) -> Result<ExpectationLedger> {
    check_prefix(rounds, lambdas)?;
    let n = config.n_qubits();
    let recycled = config.recycled();
    let s1_string = PauliString::all_x(n);
    let s1_init = initial_s1(config.family(), n, config.s1_mode())?;
    let groups = if members {
        enumerate_z_terms(n, recycled)?
    } else {
        Vec::new()
    };
    let counts = recycled_exponent_counts(n, recycled.len());

    let mut out = Vec::with_capacity(rounds);
    for k in 1..=rounds {
        let history = &lambdas[..k - 1];
        let mut map = BTreeMap::new();
        map.insert(
            LedgerKey::S1,
            s1_init * propagate(&s1_string, history, recycled)?,
        );
        let ln_q: f64 = history.iter().map(|&l| ln_z_factor(l)).sum();
        for theta in 1..=n / 2 {
            for t in 0..=(2 * theta).min(n - recycled.len()) {
                let e = 2 * theta - t;
                if e > recycled.len() || counts[e] == 0 {
                    continue;
                }
                map.insert(LedgerKey::ZGroup { theta, t }, (e as f64 * ln_q).exp());
            }
        }
        for m in groups.iter().flat_map(|g| g.members.iter()) {
            map.insert(LedgerKey::Pauli(m.clone()), propagate(m, history, recycled)?);
        }
        map.insert(
            LedgerKey::Witness,
            witness_expectation_analytic(config, k, lambdas)?,
        );
        out.push(map);
    }
    Ok(ExpectationLedger {
        source: LedgerSource::Analytic,
        rounds: out,
    })
}
