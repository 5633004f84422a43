//! Log-domain sequence generation for first-round sharpness parameters too
//! small for `f64`.
//!
//! Long detection runs at large `N0` need `λ_1` far below the smallest
//! representable double (about `2^-1539` for eight detections at `N0 = 4`).
//! Here every quantity is carried as a logarithm: `ℓ_k = ln λ_k` and
//! `ln(-ln Q_k)`.

use crate::error::Result;
use crate::scenario::{recycled_exponent_counts, ScenarioConfig};
use crate::transfer::{initial_s1, ln_z_factor};

use super::GeneratorKind;
use crate::scenario::IntervalMode;

const LN_2: f64 = std::f64::consts::LN_2;
/// Below `ln x = -30`, `ln(1 - e^-x) = ln x - x/2` to double precision.
const SMALL_LOG: f64 = -30.0;
/// Maximum number of bisection steps.
pub const BISECTION_DEPTH: usize = 64;

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(-ln((1+Λ)/2))` for `λ = e^ℓ`.
fn ln_neg_ln_z_factor(ell: f64) -> f64 {
    if ell < SMALL_LOG {
        // -ln((1+Λ)/2) = λ²/4 (1 + O(λ²))
        2.0 * ell - 2.0 * LN_2
    } else {
        (-ln_z_factor(ell.exp())).ln()
    }
}

/// `ln(1 - e^{-x})` given `ln x`.
fn ln_one_minus_exp_neg(ln_x: f64) -> f64 {
    if ln_x < SMALL_LOG {
        ln_x - 0.5 * ln_x.exp()
    } else {
        (-(-ln_x.exp()).exp_m1()).ln()
    }
}

/// Detection count for first-round sharpness `e^{ln_lambda1}` using the
/// general (or mixed-family) generator of `config`; the configured `λ_1` is
/// ignored. Returns the count and `ln λ_k` of every detection.
pub fn log_detection_count(config: &ScenarioConfig, ln_lambda1: f64) -> Result<(usize, Vec<f64>)> {
    let n = config.n_qubits();
    let n0 = config.n_recycled();
    let ln_s1 = match GeneratorKind::for_config(config) {
        GeneratorKind::General => 0.0,
        _ => initial_s1(config.family(), n, config.s1_mode())?.ln(),
    };
    let ln_counts: Vec<f64> = recycled_exponent_counts(n, n0)
        .iter()
        .map(|&m| (m as f64).ln())
        .collect();
    let accepts = |ell: f64| match config.interval() {
        IntervalMode::Open => ell < 0.0,
        IntervalMode::HalfOpen => ell <= 0.0,
    };
    let ln_one_eps = config.epsilon().ln_1p();

    let mut ells = Vec::new();
    let mut ln_u = f64::NEG_INFINITY; // ln(-ln Q)
    let mut ell = ln_lambda1;
    while ells.len() < config.max_rounds() {
        if !(ell.is_finite() && accepts(ell)) {
            break;
        }
        ells.push(ell);
        ln_u = log_add_exp(ln_u, ln_neg_ln_z_factor(ell));
        let k = ells.len() + 1;
        let ln_r = (1..=n0)
            .filter(|&e| ln_counts[e].is_finite())
            .map(|e| ln_counts[e] + ln_one_minus_exp_neg((e as f64).ln() + ln_u))
            .fold(f64::NEG_INFINITY, log_add_exp);
        let ln_x = ln_one_eps + ((n0 * (k - 1)) as f64 - (n as f64 - 2.0)) * LN_2 + ln_r - ln_s1;
        ell = ln_x / n0 as f64;
    }
    Ok((ells.len(), ells))
}

/// Result of a search for a first-round sharpness reaching a target count.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeOutcome {
    pub found: bool,
    /// `ln λ_1` of the returned point; always finite.
    pub ln_lambda1: f64,
    /// `λ_1` as a double, zero when it underflows.
    pub lambda1: f64,
    pub achieved: usize,
    pub bisection_steps: usize,
}

impl ProbeOutcome {
    pub fn log10_lambda1(&self) -> f64 {
        self.ln_lambda1 / std::f64::consts::LN_10
    }
}

/// Searches `λ_1 ∈ (0, 1)` for a detection count of at least `target`.
///
/// The lower end is pushed down geometrically in `ln λ_1` until the target is
/// met, then up to [`BISECTION_DEPTH`] bisection steps move towards the
/// largest such `λ_1`, relying on the count being non-increasing in `λ_1`.
pub fn unboundedness_probe(template: &ScenarioConfig, target: usize) -> Result<ProbeOutcome> {
    let count = |ell: f64| log_detection_count(template, ell).map(|(c, _)| c);
    let fail = |ell: f64, achieved: usize, steps: usize| ProbeOutcome {
        found: false,
        ln_lambda1: ell,
        lambda1: ell.exp(),
        achieved,
        bisection_steps: steps,
    };
    if target > template.max_rounds() {
        return Ok(fail(-1.0, count(-1.0)?, 0));
    }

    let mut good = -1.0;
    let mut good_count = count(good)?;
    while good_count < target {
        if good < -1e300 {
            return Ok(fail(good, good_count, 0));
        }
        good *= 2.0;
        good_count = count(good)?;
    }

    let mut bad = 0.0;
    let mut steps = 0;
    while steps < BISECTION_DEPTH {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        steps += 1;
        let c = count(mid)?;
        if c >= target && mid.exp() < 1.0 {
            good = mid;
            good_count = c;
        } else {
            bad = mid;
        }
    }
    Ok(ProbeOutcome {
        found: true,
        ln_lambda1: good,
        lambda1: good.exp(),
        achieved: good_count,
        bisection_steps: steps,
    })
}
