use rand::Rng;
use rayon::prelude::*;
use seqgme::dense::{lueders_round, lueders_round_expanded, oracle_ledger, DenseState};
use seqgme::transfer::analytic_ledger;
use seqgme::ScenarioConfig;

use super::{base_table, cap, stream_rng, thread_pool};
use crate::args::{CrossvalArgs, GlobalArgs};
use crate::error::{CliError, CliResult};
use crate::table::Cell;
use crate::Report;

const COLUMNS: [&str; 8] = [
    "n_qubits",
    "n_recycled",
    "seed_index",
    "rounds",
    "max_dev_s1",
    "max_dev_z",
    "max_dev_witness",
    "max_dev_channel",
];

struct Outcome {
    s1: f64,
    z: f64,
    witness: f64,
    channel: Option<f64>,
}

pub(super) fn run(g: &GlobalArgs, a: &CrossvalArgs) -> CliResult<Report> {
    let dense_cap = cap(a.allow_large);
    dense_cap.check(a.n_max)?;
    if a.n_min < 3 || a.n_min > a.n_max {
        return Err(CliError::Usage(format!(
            "need 3 <= --n-min <= --n-max, got {}..{}",
            a.n_min, a.n_max
        )));
    }
    if a.k_max == 0 || a.seeds == 0 {
        return Err(CliError::Usage("--k-max and --seeds must be at least 1".into()));
    }
    let family = a.family.family()?;
    let points: Vec<(usize, usize, usize)> = (a.n_min..=a.n_max)
        .flat_map(|n| (1..=n).flat_map(move |n0| (0..a.seeds).map(move |s| (n, n0, s))))
        .collect();

    let outcomes: Vec<Outcome> = thread_pool(g.threads)?.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(idx, &(n, n0, _))| -> CliResult<Outcome> {
                let mut rng = stream_rng(g.seed, idx as u64);
                let lambdas: Vec<f64> = (0..a.k_max).map(|_| rng.random::<f64>()).collect();
                let config = ScenarioConfig::new(n, n0, 0.5, 0.01)?
                    .with_family(family)?
                    .with_s1_mode(a.family.s1_mode);
                let analytic = analytic_ledger(&config, &lambdas, a.k_max, true)?;
                let oracle = oracle_ledger(&config, &lambdas, a.k_max, dense_cap)?;
                let (s1, z, witness) = analytic.max_deviation(&oracle);
                let channel = if a.channels {
                    let rho = DenseState::random(n, rng.random());
                    let l: f64 = rng.random();
                    let kraus = lueders_round(&rho, l, config.recycled())?;
                    let expanded = lueders_round_expanded(&rho, l, config.recycled())?;
                    Some(kraus.max_abs_diff(&expanded))
                } else {
                    None
                };
                Ok(Outcome { s1, z, witness, channel })
            })
            .collect::<CliResult<Vec<_>>>()
    })?;

    let mut t = base_table(g, "crossval", &COLUMNS);
    t.meta("s1_mode", a.family.s1_mode);
    t.meta("interval_mode", "n/a");
    t.meta("max_rounds", a.k_max);
    t.meta("family", family.tag());
    t.meta("channels", a.channels);
    let mut worst = [0.0f64; 4];
    for (&(n, n0, s), o) in points.iter().zip(&outcomes) {
        worst[0] = worst[0].max(o.s1);
        worst[1] = worst[1].max(o.z);
        worst[2] = worst[2].max(o.witness);
        worst[3] = worst[3].max(o.channel.unwrap_or(0.0));
        t.push(vec![
            n.into(),
            n0.into(),
            s.into(),
            a.k_max.into(),
            o.s1.into(),
            o.z.into(),
            o.witness.into(),
            Cell::from(o.channel),
        ]);
    }
    t.meta_float("tol", g.tol);
    t.meta_float("max_dev_s1", worst[0]);
    t.meta_float("max_dev_z", worst[1]);
    t.meta_float("max_dev_witness", worst[2]);
    if a.channels {
        t.meta_float("max_dev_channel", worst[3]);
    }
    let overall = worst.iter().copied().fold(0.0, f64::max);
    let pass = overall <= g.tol;
    t.meta("verdict", if pass { "pass" } else { "fail" });
    let violation = (!pass).then(|| format!("max deviation {overall:e} exceeds tol {:e}", g.tol));
    Ok(Report { table: t, violation })
}
