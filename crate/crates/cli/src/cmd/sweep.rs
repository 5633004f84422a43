use std::fs;

use rayon::prelude::*;
use seqgme::sequence::detection_count;

use super::{base_table, thread_pool};
use crate::args::{GlobalArgs, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::plot::{step_plot_script, Curve};
use crate::Report;

const COLUMNS: [&str; 7] = [
    "n_qubits",
    "n_recycled",
    "lambda1",
    "epsilon",
    "family",
    "s1_mode",
    "detection_count",
];

pub(super) fn run(g: &GlobalArgs, a: &SweepArgs) -> CliResult<Report> {
    let sc = &a.scenario;
    let lambdas = a.grid.points();
    let mut ns = a.n.0.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut points = Vec::new();
    for &n in &ns {
        let mut levels = a.hierarchy.levels(n);
        levels.sort_unstable();
        levels.dedup();
        for n0 in levels {
            // validate once per (N, N0) so bad flags fail before the pool starts
            sc.config(n, n0, lambdas[0])?;
            points.extend(lambdas.iter().map(|&l| (n, n0, l)));
        }
    }
    if points.is_empty() {
        return Err(CliError::Usage("no (N, N0) pair to sweep".into()));
    }

    // par_iter().collect() keeps grid order regardless of completion order
    let counts: Vec<usize> = thread_pool(g.threads)?.install(|| {
        points
            .par_iter()
            .map(|&(n, n0, l)| Ok(detection_count(&sc.config(n, n0, l)?)?))
            .collect::<CliResult<Vec<_>>>()
    })?;

    let family = sc.family.family()?.tag();
    let mut t = base_table(g, "sweep", &COLUMNS);
    t.meta("s1_mode", sc.family.s1_mode);
    t.meta("interval_mode", sc.interval);
    t.meta("max_rounds", sc.max_rounds);
    t.meta(
        "grid",
        format!("{}:{}:{}", a.grid.start, a.grid.stop, a.grid.step),
    );
    t.meta("grid_points", lambdas.len());
    let capped = counts.iter().filter(|&&c| c >= sc.max_rounds).count();
    t.meta("open_questions", if capped > 0 { "max_rounds_reached" } else { "none" });
    for (&(n, n0, l), &c) in points.iter().zip(&counts) {
        t.push(vec![
            n.into(),
            n0.into(),
            l.into(),
            sc.epsilon.into(),
            family.as_str().into(),
            sc.family.s1_mode.to_string().into(),
            c.into(),
        ]);
    }

    if let Some(path) = &a.emit_plot {
        let mut curves: Vec<Curve> = Vec::new();
        for (&(n, n0, l), &c) in points.iter().zip(&counts) {
            match curves.last_mut() {
                Some(cur) if cur.n_qubits == n && cur.n_recycled == n0 => cur.points.push((l, c)),
                _ => curves.push(Curve { n_qubits: n, n_recycled: n0, points: vec![(l, c)] }),
            }
        }
        let image = path.with_extension("png");
        let image = image.file_name().map(|f| f.to_string_lossy().into_owned());
        let script = step_plot_script(&curves, image.as_deref().unwrap_or("sweep.png"));
        fs::write(path, script)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(Report::ok(t))
}
