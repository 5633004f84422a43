//! Scenario parameters and the combinatorial vocabulary shared by the
//! dense oracle, the analytic engine and the sequence generators.

mod pauli;
pub mod witness;
mod zterms;

use std::fmt;
use std::str::FromStr;

pub use pauli::{PauliLetter, PauliString};
pub use witness::{build_witness_spec, WitnessSpec};
pub use zterms::{binomial, enumerate_z_terms, recycled_exponent_counts, ZTermGroup};

use crate::error::{Error, Result};

/// Largest supported `N`; witness term counts are held in `u64`.
pub const MAX_QUBITS: usize = 62;

/// Default number of measurement rounds before a run is cut off.
pub const DEFAULT_MAX_ROUNDS: usize = 1000;

/// Initial states supported by the simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    /// `(|0..0> + |1..1>)/sqrt(2)`.
    Ghz,
    /// `sqrt(a)|0..0> + sqrt(1-a)|1..1>` with `0 < a <= 1/2`.
    GeneralizedGhz { a: f64 },
    /// `p1 |gGHZ><gGHZ| + p2 |0..0><0..0| + (1-p1-p2) |1..1><1..1|`.
    MixedGghz { p1: f64, p2: f64, a: f64 },
}

impl StateFamily {
    pub fn validate(&self) -> Result<()> {
        let check_a = |a: f64| {
            if a > 0.0 && a <= 0.5 {
                Ok(())
            } else {
                Err(Error::InvalidFamily(format!("a = {a} must lie in (0, 1/2]")))
            }
        };
        match *self {
            StateFamily::Ghz => Ok(()),
            StateFamily::GeneralizedGhz { a } => check_a(a),
            StateFamily::MixedGghz { p1, p2, a } => {
                check_a(a)?;
                if !(p1 > 0.0 && p2 >= 0.0 && p1 + p2 <= 1.0) {
                    return Err(Error::InvalidFamily(format!(
                        "weights p1 = {p1}, p2 = {p2} need p1 > 0, p2 >= 0, p1 + p2 <= 1"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Short tag used in tabular output.
    pub fn tag(&self) -> String {
        match *self {
            StateFamily::Ghz => "ghz".to_string(),
            StateFamily::GeneralizedGhz { a } => format!("gghz(a={a})"),
            StateFamily::MixedGghz { p1, p2, a } => format!("mixed(p1={p1};p2={p2};a={a})"),
        }
    }

    /// Weight and amplitude parameter of the coherent part, `(p1, a)`.
    pub(crate) fn coherent_part(&self) -> (f64, f64) {
        match *self {
            StateFamily::Ghz => (1.0, 0.5),
            StateFamily::GeneralizedGhz { a } => (1.0, a),
            StateFamily::MixedGghz { p1, a, .. } => (p1, a),
        }
    }
}

/// How `<S1>` of the initial state is obtained for the non-GHZ families.
///
/// `Oracle` evaluates `<X^{⊗N}>` on the actual state, `PaperLiteral` uses the
/// published closed form `p1 * sqrt(a(1-a))`, which is smaller by a factor of
/// two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum S1Mode {
    #[default]
    Oracle,
    PaperLiteral,
}

impl fmt::Display for S1Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            S1Mode::Oracle => "oracle",
            S1Mode::PaperLiteral => "paper-literal",
        })
    }
}

impl FromStr for S1Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(S1Mode::Oracle),
            "paper-literal" | "paper" => Ok(S1Mode::PaperLiteral),
            other => Err(format!("unknown s1 mode {other:?} (expected oracle|paper-literal)")),
        }
    }
}

/// Interval a generated sharpness parameter must fall in to count as a
/// detection. `Open` is `(0, 1)`; `HalfOpen` also accepts exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntervalMode {
    #[default]
    Open,
    HalfOpen,
}

impl IntervalMode {
    pub fn accepts(&self, lambda: f64) -> bool {
        match self {
            IntervalMode::Open => lambda > 0.0 && lambda < 1.0,
            IntervalMode::HalfOpen => lambda > 0.0 && lambda <= 1.0,
        }
    }
}

impl fmt::Display for IntervalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntervalMode::Open => "open",
            IntervalMode::HalfOpen => "half-open",
        })
    }
}

impl FromStr for IntervalMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "open" => Ok(IntervalMode::Open),
            "half-open" => Ok(IntervalMode::HalfOpen),
            other => Err(format!("unknown interval mode {other:?} (expected open|half-open)")),
        }
    }
}

/// Parameters of one sequential-detection experiment.
///
/// Qubit indices are 1-based. The recycled set defaults to `{1, ..., N0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    n_qubits: usize,
    recycled: Vec<usize>,
    lambda1: f64,
    epsilon: f64,
    family: StateFamily,
    max_rounds: usize,
    s1_mode: S1Mode,
    interval: IntervalMode,
}

impl ScenarioConfig {
    pub fn new(n_qubits: usize, n_recycled: usize, lambda1: f64, epsilon: f64) -> Result<Self> {
        let config = ScenarioConfig {
            n_qubits,
            recycled: (1..=n_recycled).collect(),
            lambda1,
            epsilon,
            family: StateFamily::Ghz,
            max_rounds: DEFAULT_MAX_ROUNDS,
            s1_mode: S1Mode::Oracle,
            interval: IntervalMode::Open,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_recycled(mut self, recycled: &[usize]) -> Result<Self> {
        let mut sorted = recycled.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig(format!(
                "recycled indices {recycled:?} are not distinct"
            )));
        }
        self.recycled = sorted;
        self.validate()?;
        Ok(self)
    }

    pub fn with_family(mut self, family: StateFamily) -> Result<Self> {
        self.family = family;
        self.validate()?;
        Ok(self)
    }

    pub fn with_max_rounds(mut self, max_rounds: usize) -> Result<Self> {
        self.max_rounds = max_rounds;
        self.validate()?;
        Ok(self)
    }

    pub fn with_lambda1(mut self, lambda1: f64) -> Result<Self> {
        self.lambda1 = lambda1;
        self.validate()?;
        Ok(self)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        self.epsilon = epsilon;
        self.validate()?;
        Ok(self)
    }

    pub fn with_s1_mode(mut self, mode: S1Mode) -> Self {
        self.s1_mode = mode;
        self
    }

    pub fn with_interval(mut self, interval: IntervalMode) -> Self {
        self.interval = interval;
        self
    }

    fn validate(&self) -> Result<()> {
        validate_shape(self.n_qubits, &self.recycled)?;
        if !(self.lambda1 > 0.0 && self.lambda1 <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "lambda1 = {} must lie in (0, 1]",
                self.lambda1
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epsilon = {} must be positive",
                self.epsilon
            )));
        }
        if self.max_rounds < 1 {
            return Err(Error::InvalidConfig("max_rounds must be at least 1".into()));
        }
        self.family.validate()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_recycled(&self) -> usize {
        self.recycled.len()
    }

    /// Sorted 1-based indices of the recycled qubits.
    pub fn recycled(&self) -> &[usize] {
        &self.recycled
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn family(&self) -> StateFamily {
        self.family
    }

    pub fn max_rounds(&self) -> usize {
        self.max_rounds
    }

    pub fn s1_mode(&self) -> S1Mode {
        self.s1_mode
    }

    pub fn interval(&self) -> IntervalMode {
        self.interval
    }
}

/// Checks `N >= 3` and that `recycled` is a nonempty set of distinct indices in `[1, N]`.
pub fn validate_shape(n_qubits: usize, recycled: &[usize]) -> Result<()> {
    if n_qubits < 3 {
        return Err(Error::InvalidConfig(format!(
            "N = {n_qubits}: at least 3 qubits are required"
        )));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::InvalidConfig(format!(
            "N = {n_qubits}: term counts are exact only up to {MAX_QUBITS} qubits"
        )));
    }
    if recycled.is_empty() || recycled.len() > n_qubits {
        return Err(Error::InvalidConfig(format!(
            "N0 = {} must lie in [1, {n_qubits}]",
            recycled.len()
        )));
    }
    let mut seen = vec![false; n_qubits + 1];
    for &q in recycled {
        if q == 0 || q > n_qubits {
            return Err(Error::InvalidConfig(format!(
                "recycled index {q} outside [1, {n_qubits}]"
            )));
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::InvalidConfig(format!("recycled index {q} repeated")));
        }
    }
    Ok(())
}
