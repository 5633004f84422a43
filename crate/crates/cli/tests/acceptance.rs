//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seqgme::dense::{
    self, build_initial_state, lueders_round, lueders_round_expanded, materialize_witness,
    materialize_witness_product, oracle_ledger, simulate_rounds, DenseCap, DenseState,
};
use seqgme::scenario::{build_witness_spec, PauliString};
use seqgme::sequence::{
    detection_count, generate, predicted_witness_value, unboundedness_probe, BISECTION_DEPTH,
};
use seqgme::transfer::{analytic_ledger, initial_s1};
use seqgme::{GeneratorKind, S1Mode, ScenarioConfig, StateFamily};
use seqgme_cli::table::{reserialize_json, Table};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn max_entry_diff(a: &dense::DenseOperator, b: &dense::DenseOperator) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn ghz(n: usize, n0: usize, l1: f64, eps: f64) -> ScenarioConfig {
    ScenarioConfig::new(n, n0, l1, eps).unwrap()
}

/// 999-point grid 0.001, 0.002, ..., 0.999.
fn grid999() -> Vec<f64> {
    (1..=999).map(|i| i as f64 / 1000.0).collect()
}

fn counts(n: usize, n0: usize, eps: f64) -> Vec<usize> {
    grid999()
        .into_iter()
        .map(|l| detection_count(&ghz(n, n0, l, eps)).unwrap())
        .collect()
}

fn operator_identity() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=6 {
        for n0 in 1..=n {
            let config = ghz(n, n0, 0.5, 0.01);
            for l in [0.0, 0.3, 0.7, 1.0] {
                let sum = materialize_witness(&build_witness_spec(&config, l).unwrap()).unwrap();
                let product = materialize_witness_product(&config, l).unwrap();
                worst = worst.max(max_entry_diff(&sum, &product));
            }
        }
    }
    check(worst <= 1e-12, format!("max entry diff {worst:.3e}"))
}

fn channel_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 3..=5 {
        for n0 in 1..=n {
            let recycled: Vec<usize> = (1..=n0).collect();
            for (li, l) in [0.0, 0.3, 0.7, 1.0].into_iter().enumerate() {
                for s in 0..100u64 {
                    let rho = DenseState::random(n, (n as u64) << 32 | (n0 as u64) << 16 | (li as u64) << 8 | s);
                    let a = lueders_round(&rho, l, &recycled).unwrap();
                    let b = lueders_round_expanded(&rho, l, &recycled).unwrap();
                    worst = worst.max(a.max_abs_diff(&b));
                    cases += 1;
                }
            }
        }
    }
    check(worst <= 1e-12, format!("{cases} states, max entry diff {worst:.3e}"))
}

fn expectation_recursion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut s1, mut z) = (0.0f64, 0.0f64);
    for n in 3..=6 {
        for n0 in 1..=n {
            let config = ghz(n, n0, 0.5, 0.01);
            for _ in 0..10 {
                let lambdas: Vec<f64> = (0..5).map(|_| rng.random()).collect();
                let a = analytic_ledger(&config, &lambdas, 5, true).unwrap();
                let o = oracle_ledger(&config, &lambdas, 5, DenseCap::Default).unwrap();
                let (ds, dz, _) = a.max_deviation(&o);
                s1 = s1.max(ds);
                z = z.max(dz);
            }
        }
    }
    check(s1 <= 1e-10 && z <= 1e-10, format!("max dev S1 {s1:.3e}, Z terms {z:.3e}"))
}

fn witness_identity() -> Outcome {
    let (mut later, mut first) = (0.0f64, 0.0f64);
    let mut later_checks = 0;
    let mut missing = Vec::new();
    for n in 3..=6 {
        for n0 in 1..=n {
            for eps in [0.01, 0.1] {
                let before = later_checks;
                for l1 in [1e-3, 0.05, 0.3, 0.6] {
                    let config = ghz(n, n0, l1, eps);
                    let seq = generate(GeneratorKind::General, &config).unwrap();
                    let rounds = seq.detection_count().min(4);
                    if rounds == 0 {
                        continue;
                    }
                    let states =
                        simulate_rounds(&config, &seq.lambdas, rounds, DenseCap::Default).unwrap();
                    for k in 1..=rounds {
                        let w = build_witness_spec(&config, seq.lambdas[k - 1]).unwrap();
                        let v = dense::expectation(&states[k - 1], &w).unwrap();
                        if k == 1 {
                            first = first.max((v + l1.powi(n0 as i32)).abs());
                        } else {
                            let p = predicted_witness_value(&config, k, &seq).unwrap();
                            later = later.max((v - p).abs());
                            later_checks += 1;
                        }
                    }
                }
                if later_checks == before {
                    missing.push(format!("N={n},N0={n0},eps={eps}"));
                }
            }
        }
    }
    check(
        first <= 1e-12 && later <= 1e-10 && missing.is_empty(),
        format!(
            "round 1 dev {first:.3e}, rounds 2..4 dev {later:.3e} over {later_checks} checks{}",
            if missing.is_empty() { String::new() } else { format!(", no k>=2 data for {missing:?}") }
        ),
    )
}

fn closed_forms() -> Outcome {
    let mut worst = 0.0f64;
    let mut mismatched = Vec::new();
    let mut compared = 0;
    let mut pairs = Vec::new();
    for n in 3..=8 {
        pairs.push((n, 1, GeneratorKind::ClosedN0Eq1));
        pairs.push((n, n, GeneratorKind::ClosedN0EqN));
    }
    pairs.push((3, 2, GeneratorKind::ClosedN3N02));
    for (n, n0, kind) in pairs {
        for i in 1..=99 {
            let config = ghz(n, n0, i as f64 / 100.0, 0.01).with_max_rounds(20).unwrap();
            let g = generate(GeneratorKind::General, &config).unwrap();
            let c = generate(kind, &config).unwrap();
            if g.lambdas.len() != c.lambdas.len() {
                mismatched.push(format!("{kind} N={n} l1={}", config.lambda1()));
                continue;
            }
            for (a, b) in g.lambdas.iter().zip(&c.lambdas) {
                worst = worst.max((a - b).abs());
                compared += 1;
            }
        }
    }
    check(
        worst <= 1e-12 && mismatched.is_empty(),
        format!("{compared} values, max diff {worst:.3e}, length mismatches {mismatched:?}"),
    )
}

fn n_independence() -> Outcome {
    let reference = counts(3, 1, 0.01);
    let differing: Vec<usize> = (4..=8).filter(|&n| counts(n, 1, 0.01) != reference).collect();
    check(
        differing.is_empty(),
        format!(
            "999 points, counts {}..{}, differing N: {differing:?}",
            reference.iter().min().unwrap(),
            reference.iter().max().unwrap()
        ),
    )
}

fn hierarchy_monotonicity() -> Outcome {
    let c: Vec<Vec<usize>> = (1..=3).map(|n0| counts(3, n0, 0.01)).collect();
    let recycled_ok = (0..999).all(|i| c[0][i] >= c[1][i] && c[1][i] >= c[2][i]);
    let full: Vec<Vec<usize>> = (3..=6).map(|n| counts(n, n, 0.01)).collect();
    let qubits_ok = full.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a >= b));
    check(
        recycled_ok && qubits_ok,
        format!(
            "N=3 by N0 ordered: {recycled_ok}, N0=N by N ordered: {qubits_ok}, max counts N=3: {:?}",
            c.iter().map(|v| v.iter().max().unwrap()).collect::<Vec<_>>()
        ),
    )
}

fn unboundedness() -> Outcome {
    let mut failures = Vec::new();
    let mut smallest = 0.0f64;
    for n in 3..=5 {
        for n0 in 1..=n {
            let o = unboundedness_probe(&ghz(n, n0, 0.5, 0.01), 8).unwrap();
            let ok = o.found
                && o.achieved >= 8
                && o.bisection_steps <= BISECTION_DEPTH
                && o.ln_lambda1.is_finite()
                && o.ln_lambda1 < 0.0;
            if !ok {
                failures.push(format!("N={n},N0={n0}: {o:?}"));
            }
            smallest = smallest.min(o.log10_lambda1());
        }
    }
    check(
        failures.is_empty(),
        format!("smallest log10 lambda1 {smallest:.1}, failures {failures:?}"),
    )
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_seqgme"))
        .args(args)
        .output()
        .expect("run seqgme");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn col_f64(t: &Table, name: &str, row: usize) -> f64 {
    let c = t.column(name).expect("column");
    t.rows[row][c].csv_text().parse().expect("float cell")
}

fn biseparable_bound() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for n in ["3", "4"] {
        let (code, csv) = run_cli(&[
            "bisep", "--n", n, "--samples", "1000", "--lambda", "0.25,0.5,1.0", "--control-ghz",
            "--seed", "7",
        ]);
        let t = Table::from_csv(&csv).map_err(|e| e.to_string())?;
        let min: f64 = t.get_meta("min_witness").unwrap().parse().unwrap();
        let control: f64 = t.get_meta("control_max_dev").unwrap().parse().unwrap();
        let src = t.column("source").unwrap();
        let sources: std::collections::BTreeSet<String> =
            t.rows.iter().map(|r| r[src].csv_text()).collect();
        let expected_sources = (1usize << (n.parse::<usize>().unwrap() - 1)) - 1 + 2;
        let samples_ok = (0..t.rows.len()).all(|r| col_f64(&t, "samples", r) >= 1.0);
        ok &= code == 0
            && min >= -1e-9
            && control <= 1e-12
            && sources.len() == expected_sources
            && samples_ok;
        details.push(format!("N={n}: min {min:.3e}, control dev {control:.1e}, exit {code}"));
    }
    check(ok, details.join("; "))
}

fn mixed_family() -> Outcome {
    let mut worst = 0.0f64;
    let mut len_ok = true;
    let family = StateFamily::MixedGghz { p1: 1.0, p2: 0.0, a: 0.5 };
    for n in 3..=6 {
        for n0 in 1..=n {
            for i in 1..=19 {
                let l1 = i as f64 / 20.0;
                let g = generate(GeneratorKind::General, &ghz(n, n0, l1, 0.01)).unwrap();
                let config = ghz(n, n0, l1, 0.01).with_family(family).unwrap();
                let m = generate(GeneratorKind::MixedFamily, &config).unwrap();
                len_ok &= g.lambdas.len() == m.lambdas.len();
                for (a, b) in g.lambdas.iter().zip(&m.lambdas) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    // a = 1/4: the oracle-mode <S1> is the dense <X^N>, twice the published value
    let quarter = StateFamily::MixedGghz { p1: 0.9, p2: 0.05, a: 0.25 };
    let dense_s1 = dense::expectation(&build_initial_state(quarter, 4).unwrap(), &PauliString::all_x(4))
        .unwrap();
    let oracle_s1 = initial_s1(quarter, 4, S1Mode::Oracle).unwrap();
    let literal_s1 = initial_s1(quarter, 4, S1Mode::PaperLiteral).unwrap();
    let base = [
        "sequence", "--n", "4", "--n0", "2", "--lambda1", "0.3", "--family", "mixed", "--p1",
        "0.9", "--p2", "0.05", "--a", "0.25", "--with-oracle",
    ];
    let mut flagged = true;
    let mut codes = Vec::new();
    for mode in ["oracle", "paper-literal"] {
        let mut args = base.to_vec();
        args.extend(["--s1-mode", mode]);
        let (code, csv) = run_cli(&args);
        codes.push(code);
        let t = Table::from_csv(&csv).map_err(|e| e.to_string())?;
        flagged &= t
            .get_meta("open_questions")
            .is_some_and(|v| v.contains("s1_factor_discrepancy"));
        flagged &= t.get_meta("s1_mode") == Some(mode);
    }
    let ratio = oracle_s1 / literal_s1;
    check(
        worst <= 1e-12
            && len_ok
            && oracle_s1 == dense_s1
            && (ratio - 2.0).abs() < 1e-12
            && flagged
            && codes == [0, 0],
        format!(
            "GHZ-limit max diff {worst:.3e}; a=0.25 S1 oracle {oracle_s1:.6} vs literal {literal_s1:.6} (ratio {ratio:.3}); flagged {flagged}; exits {codes:?}"
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 4] = [
        &["sweep", "--n", "3,4,5,6", "--n0-mode", "each", "--grid", "0.001:1.0:0.001"],
        &["sweep", "--n", "3", "--n0", "1,2,3", "--grid", "0.01:1.0:0.01", "--format", "json"],
        &["crossval", "--n-max", "5", "--k-max", "4", "--seeds", "3", "--channels", "--seed", "11"],
        &["bisep", "--n", "3", "--samples", "200", "--seed", "5", "--format", "json"],
    ];
    let mut notes = Vec::new();
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for (j, threads) in ["1", "4", "4"].iter().enumerate() {
            let path = dir.path().join(format!("run{i}_{j}"));
            let mut full: Vec<&str> = args.to_vec();
            let p = path.to_str().unwrap().to_string();
            full.extend(["--threads", threads, "--out", &p]);
            let (code, _) = run_cli(&full);
            if code != 0 {
                return Err(format!("{args:?} exited {code}"));
            }
            outputs.push(std::fs::read(Path::new(&p)).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] || outputs[1] != outputs[2] {
            return Err(format!("{args:?}: outputs differ between runs"));
        }
        let text = String::from_utf8(outputs[0].clone()).unwrap();
        let round_trip = if args.contains(&"json") {
            reserialize_json(&text).map_err(|e| e.to_string())?
        } else {
            Table::from_csv(&text).map_err(|e| e.to_string())?.to_csv()
        };
        if round_trip != text {
            return Err(format!("{args:?}: re-serialization is not byte-identical"));
        }
        notes.push(format!("{} {}B", args[0], text.len()));
    }
    Ok(format!("identical across 1/4/4 workers and round-trip: {}", notes.join(", ")))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "operator identity", limit: Some(Duration::from_secs(30)), run: operator_identity },
        Criterion { id: 2, name: "channel equivalence", limit: Some(Duration::from_secs(60)), run: channel_equivalence },
        Criterion { id: 3, name: "expectation recursion", limit: Some(Duration::from_secs(120)), run: expectation_recursion },
        Criterion { id: 4, name: "witness-value identity", limit: None, run: witness_identity },
        Criterion { id: 5, name: "closed-form regression", limit: None, run: closed_forms },
        Criterion { id: 6, name: "N-independence at N0=1", limit: None, run: n_independence },
        Criterion { id: 7, name: "hierarchy monotonicity", limit: Some(Duration::from_secs(10)), run: hierarchy_monotonicity },
        Criterion { id: 8, name: "unboundedness probe", limit: Some(Duration::from_secs(5)), run: unboundedness },
        Criterion { id: 9, name: "biseparable bound", limit: None, run: biseparable_bound },
        Criterion { id: 10, name: "mixed-family consistency", limit: None, run: mixed_family },
        Criterion { id: 11, name: "determinism", limit: None, run: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over = c.limit.is_some_and(|l| elapsed > l);
        let (ok, detail) = match outcome {
            Ok(d) => (!over, d),
            Err(d) => (false, d),
        };
        let limit = c.limit.map_or(String::new(), |l| format!(" / limit {}s", l.as_secs()));
        println!(
            "criterion {:>2} {}: {} ({:.2}s{limit}) {detail}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
        );
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
