use std::collections::BTreeMap;

use super::{build_initial_state_capped, expectation, lueders_round, DenseCap, DenseState};
use crate::error::{Error, Result};
use crate::scenario::{build_witness_spec, enumerate_z_terms, PauliString, ScenarioConfig};
use crate::transfer::{ExpectationLedger, LedgerKey, LedgerSource};

/// Dense states `ρ_1..ρ_rounds`, where `ρ_{k+1}` is `ρ_k` after one
/// measurement round with sharpness `lambdas[k-1]`.
pub fn simulate_rounds(
    config: &ScenarioConfig,
    lambdas: &[f64],
    rounds: usize,
    cap: DenseCap,
) -> Result<Vec<DenseState>> {
    if rounds == 0 || lambdas.len() + 1 < rounds {
        return Err(Error::RoundOutOfRange {
            k: rounds,
            available: lambdas.len() + 1,
        });
    }
    let mut states = vec![build_initial_state_capped(
        config.family(),
        config.n_qubits(),
        cap,
    )?];
    for &l in &lambdas[..rounds - 1] {
        let next = lueders_round(states.last().expect("nonempty"), l, config.recycled())?;
        states.push(next);
    }
    Ok(states)
}

/// Oracle ledger: `<S1>`, every Z-string member and `<W_k>` (with
/// `lambdas[k-1]` in the witness) evaluated on the simulated states.
pub fn oracle_ledger(
    config: &ScenarioConfig,
    lambdas: &[f64],
    rounds: usize,
    cap: DenseCap,
) -> Result<ExpectationLedger> {
    if lambdas.len() < rounds {
        return Err(Error::RoundOutOfRange {
            k: rounds,
            available: lambdas.len(),
        });
    }
    let n = config.n_qubits();
    let states = simulate_rounds(config, lambdas, rounds, cap)?;
    let s1 = PauliString::all_x(n);
    let groups = enumerate_z_terms(n, config.recycled())?;
    let mut out = Vec::with_capacity(rounds);
    for (k, rho) in states.iter().enumerate() {
        let mut map = BTreeMap::new();
        map.insert(LedgerKey::S1, expectation(rho, &s1)?);
        for m in groups.iter().flat_map(|g| g.members.iter()) {
            map.insert(LedgerKey::Pauli(m.clone()), expectation(rho, m)?);
        }
        let w = build_witness_spec(config, lambdas[k])?;
        map.insert(LedgerKey::Witness, expectation(rho, &w)?);
        out.push(map);
    }
    Ok(ExpectationLedger {
        source: LedgerSource::Oracle,
        rounds: out,
    })
}
