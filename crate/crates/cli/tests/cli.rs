use std::process::{Command, Output};

use seqgme_cli::table::Table;

fn seqgme(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqgme"))
        .args(args)
        .env_remove("SEQGME_THREADS")
        .output()
        .expect("run seqgme")
}

fn table(out: &Output) -> Table {
    Table::from_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn column(t: &Table, name: &str) -> Vec<String> {
    let c = t.column(name).unwrap();
    t.rows.iter().map(|r| r[c].csv_text()).collect()
}

#[test]
fn all_recycled_three_qubits_stops_after_one_round() {
    let out = seqgme(&["sequence", "--n", "3", "--n0", "3", "--lambda1", "0.6", "--epsilon", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let t = table(&out);
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.get_meta("status"), Some("terminated_out_of_range(2)"));
    let terminal: f64 = t.get_meta("terminal_value").unwrap().parse().unwrap();
    assert!((terminal - 1.3205415592338172).abs() < 1e-12);
    for key in ["version", "seed", "s1_mode", "interval_mode", "max_rounds"] {
        assert!(t.get_meta(key).is_some(), "{key}");
    }
}

#[test]
fn single_recycled_lambda_column_is_n_independent() {
    let base = ["sequence", "--n0", "1", "--lambda1", "0.8", "--epsilon", "0.01", "--n"];
    let three = table(&seqgme(&[&base[..], &["3"]].concat()));
    let five = table(&seqgme(&[&base[..], &["5"]].concat()));
    assert_eq!(three.rows.len(), 3);
    assert_eq!(column(&three, "lambda_k"), column(&five, "lambda_k"));
}

#[test]
fn oracle_column_matches_analytic() {
    let out = seqgme(&["sequence", "--n", "4", "--n0", "2", "--lambda1", "0.05", "--with-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let t = table(&out);
    assert!(t.rows.len() >= 2);
    let a = column(&t, "witness_analytic");
    let o = column(&t, "witness_oracle");
    for (a, o) in a.iter().zip(&o) {
        let (a, o): (f64, f64) = (a.parse().unwrap(), o.parse().unwrap());
        assert!((a - o).abs() <= 1e-10);
    }
}

#[test]
fn explicit_recycled_set() {
    let out = seqgme(&["sequence", "--n", "4", "--recycled", "2,4", "--lambda1", "0.1", "--with-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let t = table(&out);
    assert_eq!(t.get_meta("recycled"), Some("2 4"));
    assert_eq!(t.get_meta("n_recycled"), Some("2"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["sequence", "--n", "3", "--n0", "2", "--lambda1", "1.5"][..],
        &["sequence", "--n", "3"],
        &["sweep", "--n", "3", "--grid", "0.1:0.5"],
        &["sweep", "--n", "3", "--n0", "1", "--n0-mode", "all", "--grid", "0.1:0.5:0.1"],
        &["sequence", "--n", "3", "--n0", "1", "--lambda1", "0.5", "--generator", "closed-n0-n"],
        &["sequence", "--n", "3", "--n0", "1", "--lambda1", "0.5", "--family", "gghz"],
        &["bogus"],
    ] {
        let out = seqgme(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn dense_cap_refusals_exit_three() {
    assert_eq!(seqgme(&["crossval", "--n-max", "13"]).status.code(), Some(3));
    assert_eq!(seqgme(&["bisep", "--n", "11"]).status.code(), Some(3));
    let args = ["sequence", "--n", "11", "--n0", "1", "--lambda1", "0.5", "--with-oracle"];
    assert_eq!(seqgme(&args).status.code(), Some(3));
    // the analytic path alone has no cap
    assert_eq!(seqgme(&args[..7]).status.code(), Some(0));
}

#[test]
fn tolerance_violation_exits_two_and_still_writes() {
    let out = seqgme(&["crossval", "--n-max", "3", "--k-max", "2", "--seeds", "1", "--tol", "0"]);
    let t = table(&out);
    let worst: f64 = t.get_meta("max_dev_z").unwrap().parse().unwrap();
    if worst > 0.0 {
        assert_eq!(out.status.code(), Some(2));
        assert_eq!(t.get_meta("verdict"), Some("fail"));
    }
    let out = seqgme(&["crossval", "--n-max", "4", "--channels", "--seeds", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(table(&out).get_meta("max_dev_channel").is_some());
}

#[test]
fn single_point_sweep() {
    let out = seqgme(&["sweep", "--n", "3", "--n0", "1", "--grid", "0.5:0.5:0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let t = table(&out);
    assert_eq!(t.rows.len(), 1);
    assert_eq!(
        t.columns,
        ["n_qubits", "n_recycled", "lambda1", "epsilon", "family", "s1_mode", "detection_count"]
    );
}

#[test]
fn sweep_rows_sorted_and_plot_written() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("fig.gp");
    let out = seqgme(&[
        "sweep", "--n", "4,3", "--n0", "3,1", "--grid", "0.1:0.9:0.1",
        "--emit-plot", plot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = table(&out);
    let keys: Vec<(usize, usize, f64)> = t
        .rows
        .iter()
        .map(|r| (r[0].csv_text().parse().unwrap(), r[1].csv_text().parse().unwrap(), r[2].csv_text().parse().unwrap()))
        .collect();
    assert_eq!(keys.len(), 4 * 9);
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let script = std::fs::read_to_string(plot).unwrap();
    for block in ["$n3_r1", "$n3_r3", "$n4_r1", "$n4_r3"] {
        assert!(script.contains(&format!("{block} << EOD")), "{block}");
    }
    assert!(script.contains("with steps"));
}

#[test]
fn config_file_values_yield_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sequence defaults\nn = 5\nn0 = 1\nlambda1 = 0.8\nwith-oracle = true\nseed = 9\n").unwrap();
    let out = seqgme(&["--config", cfg.to_str().unwrap(), "sequence", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let t = table(&out);
    assert_eq!(t.get_meta("n_qubits"), Some("3"));
    assert_eq!(t.get_meta("seed"), Some("9"));
    assert!(!column(&t, "witness_oracle")[0].is_empty());

    std::fs::write(&cfg, "nonsense = 1\n").unwrap();
    let out = seqgme(&["sequence", "--config", cfg.to_str().unwrap(), "--n", "3", "--n0", "1", "--lambda1", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_mirror_has_same_rows() {
    let args = ["probe", "--n", "3", "--n0", "1,2,3", "--target", "8"];
    let csv = table(&seqgme(&args));
    let json: serde_json::Value =
        serde_json::from_slice(&seqgme(&[&args[..], &["--format", "json"]].concat()).stdout).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), csv.rows.len());
    assert_eq!(json["metadata"]["all_found"], "true");
    assert_eq!(json["columns"][0], "n_qubits");
}

#[test]
fn probe_hierarchy() {
    let t = table(&seqgme(&["probe", "--n", "3,6", "--n0-mode", "all", "--target", "8"]));
    let ln: Vec<f64> = column(&t, "ln_lambda1").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(column(&t, "found"), ["true", "true"]);
    assert!(ln[1] < ln[0]);
    let t = table(&seqgme(&["probe", "--target", "1"]));
    assert!(column(&t, "found").iter().all(|f| f == "true"));
}

#[test]
fn bisep_ghz_control() {
    let out = seqgme(&["bisep", "--n", "3", "--samples", "50", "--lambda", "1.0", "--control-ghz"]);
    assert_eq!(out.status.code(), Some(0));
    let t = table(&out);
    let src = t.column("source").unwrap();
    let w = t.column("min_witness").unwrap();
    let controls: Vec<f64> = t
        .rows
        .iter()
        .filter(|r| r[src].csv_text() == "ghz_control")
        .map(|r| r[w].csv_text().parse().unwrap())
        .collect();
    assert_eq!(controls.len(), 3);
    assert!(controls.iter().all(|&v| (v + 1.0).abs() <= 1e-12));
}

#[test]
fn timestamp_is_opt_in() {
    let args = ["sweep", "--n", "3", "--n0", "1", "--grid", "0.5:0.5:0.1"];
    assert!(table(&seqgme(&args)).get_meta("generated_unix").is_none());
    assert!(table(&seqgme(&[&args[..], &["--timestamp"]].concat())).get_meta("generated_unix").is_some());
}
