//! Closed forms of the sequence for special hierarchy levels. `ln_q` is
//! `ln Q_k`; `1 - Q` and its powers are taken through `expm1` so that the
//! formulas stay accurate when `Q_k` is close to 1.

use super::bracket::scale_pow2;

fn one_minus_q_pow(ln_q: f64, e: f64) -> f64 {
    -(e * ln_q).exp_m1()
}

/// `(1+ε) 2^{k-1} (1 - Q_k)`.
pub(super) fn n0_eq_1(one_eps: f64, k1: i64, ln_q: f64) -> f64 {
    one_eps * scale_pow2(one_minus_q_pow(ln_q, 1.0), k1)
}

/// `(1+ε) 2^{N(k-1)+1} [1 - ((1+Q)/2)^N - ((1-Q)/2)^N]`.
pub(super) fn n0_eq_n(one_eps: f64, n: usize, k1: i64, ln_q: f64) -> f64 {
    let one_minus_q = one_minus_q_pow(ln_q, 1.0);
    let nf = n as f64;
    // 1 - ((1+Q)/2)^N = 1 - (1 - (1-Q)/2)^N
    let head = -(nf * (-0.5 * one_minus_q).ln_1p()).exp_m1();
    let tail = (0.5 * one_minus_q).powi(n as i32);
    one_eps * scale_pow2(head - tail, n as i64 * k1 + 1)
}

/// `(1+ε) 4^{k-1}/2 [3 - Q^2 - 2Q]`, bracket as `(1 - Q^2) + 2(1 - Q)`.
pub(super) fn n3_n0_2(one_eps: f64, k1: i64, ln_q: f64) -> f64 {
    let bracket = one_minus_q_pow(ln_q, 2.0) + 2.0 * one_minus_q_pow(ln_q, 1.0);
    one_eps * scale_pow2(bracket, 2 * k1 - 1)
}
