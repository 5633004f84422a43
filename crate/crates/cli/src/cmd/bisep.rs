use rand::Rng;
use rayon::prelude::*;
use seqgme::dense::{
    all_bipartitions, build_initial_state, expectation, random_biseparable_mixture,
    random_biseparable_state, DenseState,
};
use seqgme::scenario::{build_witness_spec, WitnessSpec};
use seqgme::{ScenarioConfig, StateFamily};

use super::{base_table, cap, stream_rng, thread_pool};
use crate::args::{BisepArgs, GlobalArgs};
use crate::error::{CliError, CliResult};
use crate::Report;

/// Witness values below this on a biseparable state count as a violation.
pub const BISEP_FLOOR: f64 = -1e-9;

const COLUMNS: [&str; 5] = ["source", "n_recycled", "lambda", "samples", "min_witness"];

enum Source {
    Cut(seqgme::dense::Bipartition),
    Mixture,
}

pub(super) fn run(g: &GlobalArgs, a: &BisepArgs) -> CliResult<Report> {
    cap(a.allow_large).check(a.n)?;
    if a.samples == 0 || a.mixture_components == 0 {
        return Err(CliError::Usage("--samples and --mixture-components must be at least 1".into()));
    }
    let n = a.n;
    let levels: Vec<usize> = match &a.n0 {
        Some(list) => list.0.clone(),
        None => (1..=n).collect(),
    };
    // witnesses in (N0, λ) order; the row order follows this too
    let mut witnesses: Vec<(usize, f64, WitnessSpec)> = Vec::new();
    for &n0 in &levels {
        let config = ScenarioConfig::new(n, n0, 0.5, 0.01)?;
        for &l in &a.lambda.0 {
            witnesses.push((n0, l, build_witness_spec(&config, l)?));
        }
    }

    let mut sources: Vec<Source> = all_bipartitions(n).into_iter().map(Source::Cut).collect();
    sources.push(Source::Mixture);
    let minima: Vec<Vec<f64>> = thread_pool(g.threads)?.install(|| {
        sources
            .par_iter()
            .enumerate()
            .map(|(idx, src)| -> CliResult<Vec<f64>> {
                let mut rng = stream_rng(g.seed, idx as u64);
                let mut mins = vec![f64::INFINITY; witnesses.len()];
                for _ in 0..a.samples {
                    let seed: u64 = rng.random();
                    let rho = match src {
                        Source::Cut(b) => random_biseparable_state(n, b, seed)?,
                        Source::Mixture => {
                            random_biseparable_mixture(n, a.mixture_components, seed)?
                        }
                    };
                    for (m, (_, _, w)) in mins.iter_mut().zip(&witnesses) {
                        *m = m.min(expectation(&rho, w)?);
                    }
                }
                Ok(mins)
            })
            .collect::<CliResult<Vec<_>>>()
    })?;

    let mut t = base_table(g, "bisep", &COLUMNS);
    t.meta("s1_mode", "n/a");
    t.meta("interval_mode", "n/a");
    t.meta("max_rounds", "n/a");
    t.meta("n_qubits", n);
    t.meta("mixture_components", a.mixture_components);
    let mut global_min = f64::INFINITY;
    for (src, mins) in sources.iter().zip(&minima) {
        let label = match src {
            Source::Cut(b) => b.label(),
            Source::Mixture => "mixture".to_string(),
        };
        for ((n0, l, _), &m) in witnesses.iter().zip(mins) {
            global_min = global_min.min(m);
            t.push(vec![label.as_str().into(), (*n0).into(), (*l).into(), a.samples.into(), m.into()]);
        }
    }
    t.meta_float("min_witness", global_min);
    t.meta_float("bound", BISEP_FLOOR);

    if a.control_ghz {
        let ghz: DenseState = build_initial_state(StateFamily::Ghz, n)?;
        let mut dev = 0.0f64;
        for (n0, l, w) in &witnesses {
            let v = expectation(&ghz, w)?;
            dev = dev.max((v + l.powi(*n0 as i32)).abs());
            t.push(vec!["ghz_control".into(), (*n0).into(), (*l).into(), 1usize.into(), v.into()]);
        }
        t.meta_float("control_max_dev", dev);
    }
    let pass = global_min >= BISEP_FLOOR;
    t.meta("verdict", if pass { "pass" } else { "fail" });
    let violation =
        (!pass).then(|| format!("biseparable witness value {global_min:e} below {BISEP_FLOOR:e}"));
    Ok(Report { table: t, violation })
}
