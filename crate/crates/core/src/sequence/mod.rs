//! Sharpness-parameter sequences and detection counts.
//!
//! Round 1 uses the free parameter `λ_1`. For `k >= 2` the sequence is chosen
//! so that the round-`k` witness is negative by a margin `ε`:
//!
//! `λ_k^N0 = (1+ε) 2^{N0(k-1)} R_k / (2^{N-2} <S1>_1)`
//!
//! and the run stops at the first value outside the detection interval.

mod bracket;
mod closed;
mod probe;

pub use bracket::{bracket_from_ln_q, bracket_general};
pub use probe::{log_detection_count, unboundedness_probe, ProbeOutcome, BISECTION_DEPTH};

use std::fmt;

use bracket::scale_pow2;

use crate::error::{Error, Result};
use crate::scenario::{ScenarioConfig, StateFamily};
use crate::transfer::{big_lambda, initial_s1, ln_z_factor};

/// Which formula produces `λ_k` for `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Binomial-sum bracket, GHZ initial state.
    General,
    /// General bracket divided by the initial `<S1>`.
    MixedFamily,
    /// `λ_k = (1+ε) 2^{k-1} (1 - Q_k)`, one recycled qubit.
    ClosedN0Eq1,
    /// `λ_k^N = (1+ε) 2^{N(k-1)+1} [1 - ((1+Q_k)/2)^N - ((1-Q_k)/2)^N]`, all recycled.
    ClosedN0EqN,
    /// `λ_k^2 = (1+ε) 4^{k-1}/2 [3 - Q_k^2 - 2 Q_k]`, `N = 3`, `N0 = 2`.
    ClosedN3N02,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::General => "general",
            GeneratorKind::MixedFamily => "mixed-family",
            GeneratorKind::ClosedN0Eq1 => "closed-n0-1",
            GeneratorKind::ClosedN0EqN => "closed-n0-n",
            GeneratorKind::ClosedN3N02 => "closed-n3-n0-2",
        }
    }

    /// `General` for GHZ, `MixedFamily` for the other families.
    pub fn for_config(config: &ScenarioConfig) -> Self {
        match config.family() {
            StateFamily::Ghz => GeneratorKind::General,
            _ => GeneratorKind::MixedFamily,
        }
    }

    pub fn check(self, config: &ScenarioConfig) -> Result<()> {
        let n = config.n_qubits();
        let n0 = config.n_recycled();
        let ghz = matches!(config.family(), StateFamily::Ghz);
        let ok = match self {
            GeneratorKind::General => ghz,
            GeneratorKind::MixedFamily => true,
            GeneratorKind::ClosedN0Eq1 => ghz && n0 == 1,
            GeneratorKind::ClosedN0EqN => ghz && n0 == n,
            GeneratorKind::ClosedN3N02 => ghz && n == 3 && n0 == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch {
                kind: self.name(),
                n_qubits: n,
                n_recycled: n0,
            })
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            GeneratorKind::General,
            GeneratorKind::MixedFamily,
            GeneratorKind::ClosedN0Eq1,
            GeneratorKind::ClosedN0EqN,
            GeneratorKind::ClosedN3N02,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| format!("unknown generator {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SequenceStatus {
    /// Round `k` produced `value`, which is outside the detection interval.
    TerminatedOutOfRange { k: usize, value: f64 },
    /// `max_rounds` detections were recorded without leaving the interval.
    ReachedCap,
}

impl fmt::Display for SequenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceStatus::TerminatedOutOfRange { k, .. } => write!(f, "terminated_out_of_range({k})"),
            SequenceStatus::ReachedCap => f.write_str("reached_cap"),
        }
    }
}

/// A generated run. Entry `k-1` of every vector refers to round `k`; only
/// rounds whose `λ_k` lies in the detection interval are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessSequence {
    pub kind: GeneratorKind,
    pub lambdas: Vec<f64>,
    pub big_lambdas: Vec<f64>,
    /// `Q_k = Π_{j<k} (1+Λ_j)/2`.
    pub q_values: Vec<f64>,
    /// `ln Q_k`, kept separately because `Q_k` rounds to 1 for small `λ`.
    pub ln_q_values: Vec<f64>,
    pub brackets: Vec<f64>,
    pub status: SequenceStatus,
    /// `<S1>` of the initial state used by the generator.
    pub s1_initial: f64,
}

impl SharpnessSequence {
    pub fn detection_count(&self) -> usize {
        self.lambdas.len()
    }

    fn empty(kind: GeneratorKind, s1_initial: f64) -> Self {
        SharpnessSequence {
            kind,
            lambdas: vec![],
            big_lambdas: vec![],
            q_values: vec![],
            ln_q_values: vec![],
            brackets: vec![],
            status: SequenceStatus::ReachedCap,
            s1_initial,
        }
    }

    /// `ln Q` for the round after the last stored one.
    fn next_ln_q(&self) -> f64 {
        match (self.ln_q_values.last(), self.lambdas.last()) {
            (Some(lq), Some(&l)) => lq + ln_z_factor(l),
            _ => 0.0,
        }
    }
}

/// Outcome of one generator step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Step {
    Lambda(f64),
    Terminate(f64),
}

/// Value of `λ_k^{N0}` (before the root) for round `k = history.len() + 1 >= 2`.
fn raw_power(kind: GeneratorKind, config: &ScenarioConfig, k: usize, ln_q: f64, s1: f64) -> f64 {
    let n = config.n_qubits();
    let n0 = config.n_recycled();
    let one_eps = 1.0 + config.epsilon();
    let k1 = (k - 1) as i64;
    match kind {
        GeneratorKind::General | GeneratorKind::MixedFamily => {
            let r = bracket_from_ln_q(n, n0, ln_q);
            let scaled = one_eps * scale_pow2(r, n0 as i64 * k1 - (n as i64 - 2));
            if kind == GeneratorKind::MixedFamily {
                scaled / s1
            } else {
                scaled
            }
        }
        GeneratorKind::ClosedN0Eq1 => closed::n0_eq_1(one_eps, k1, ln_q),
        GeneratorKind::ClosedN0EqN => closed::n0_eq_n(one_eps, n, k1, ln_q),
        GeneratorKind::ClosedN3N02 => closed::n3_n0_2(one_eps, k1, ln_q),
    }
}

fn root(x: f64, n0: usize) -> f64 {
    match n0 {
        1 => x,
        2 => x.sqrt(),
        3 => x.cbrt(),
        _ => x.powf(1.0 / n0 as f64),
    }
}

/// Next sharpness parameter after `history`, or the out-of-interval value
/// that ends the run. The first step returns the configured `λ_1`.
pub fn next_lambda(
    kind: GeneratorKind,
    config: &ScenarioConfig,
    history: &SharpnessSequence,
) -> Result<Step> {
    kind.check(config)?;
    let lambda = if history.lambdas.is_empty() {
        config.lambda1()
    } else {
        let k = history.detection_count() + 1;
        let x = raw_power(kind, config, k, history.next_ln_q(), history.s1_initial);
        root(x, config.n_recycled())
    };
    Ok(if config.interval().accepts(lambda) {
        Step::Lambda(lambda)
    } else {
        Step::Terminate(lambda)
    })
}

/// Runs the generator until the value leaves the detection interval or
/// `max_rounds` detections are stored.
pub fn generate(kind: GeneratorKind, config: &ScenarioConfig) -> Result<SharpnessSequence> {
    kind.check(config)?;
    let s1 = match kind {
        GeneratorKind::MixedFamily => {
            initial_s1(config.family(), config.n_qubits(), config.s1_mode())?
        }
        _ => 1.0,
    };
    let n = config.n_qubits();
    let n0 = config.n_recycled();
    let mut seq = SharpnessSequence::empty(kind, s1);
    while seq.detection_count() < config.max_rounds() {
        let k = seq.detection_count() + 1;
        let ln_q = seq.next_ln_q();
        match next_lambda(kind, config, &seq)? {
            Step::Lambda(l) => {
                seq.lambdas.push(l);
                seq.big_lambdas.push(big_lambda(l));
                seq.q_values.push(ln_q.exp());
                seq.ln_q_values.push(ln_q);
                seq.brackets.push(bracket_from_ln_q(n, n0, ln_q));
            }
            Step::Terminate(value) => {
                seq.status = SequenceStatus::TerminatedOutOfRange { k, value };
                return Ok(seq);
            }
        }
    }
    seq.status = SequenceStatus::ReachedCap;
    Ok(seq)
}

/// Number of consecutive detections for `config` with the default generator.
pub fn detection_count(config: &ScenarioConfig) -> Result<usize> {
    Ok(generate(GeneratorKind::for_config(config), config)?.detection_count())
}

/// Witness value implied by the construction of the sequence: `-λ_1^{N0} <S1>_1`
/// in round 1 and `-ε R_k / 2^{N-2}` afterwards.
pub fn predicted_witness_value(
    config: &ScenarioConfig,
    k: usize,
    sequence: &SharpnessSequence,
) -> Result<f64> {
    if k == 0 || k > sequence.detection_count() {
        return Err(Error::RoundOutOfRange {
            k,
            available: sequence.detection_count(),
        });
    }
    if k == 1 {
        let l = sequence.lambdas[0];
        return Ok(-l.powi(config.n_recycled() as i32) * sequence.s1_initial);
    }
    let r = sequence.brackets[k - 1];
    Ok(-config.epsilon() * scale_pow2(r, -(config.n_qubits() as i64 - 2)))
}
