use seqgme::sequence::unboundedness_probe;

use super::base_table;
use crate::args::{GlobalArgs, ProbeArgs};
use crate::error::{CliError, CliResult};
use crate::table::Cell;
use crate::Report;

const COLUMNS: [&str; 10] = [
    "n_qubits",
    "n_recycled",
    "target",
    "found",
    "achieved",
    "ln_lambda1",
    "log10_lambda1",
    "lambda1",
    "bisection_steps",
    "note",
];

pub(super) fn run(g: &GlobalArgs, a: &ProbeArgs) -> CliResult<Report> {
    if a.target == 0 {
        return Err(CliError::Usage("--target must be at least 1".into()));
    }
    let sc = &a.scenario;
    let mut t = base_table(g, "probe", &COLUMNS);
    t.meta("s1_mode", sc.family.s1_mode);
    t.meta("interval_mode", sc.interval);
    t.meta("max_rounds", sc.max_rounds);
    t.meta_float("epsilon", sc.epsilon);
    let mut all_found = true;
    for &n in &a.n.0 {
        for n0 in a.hierarchy.levels(n) {
            // failures of a single configuration are reported, not fatal
            let outcome = sc
                .config(n, n0, 0.5)
                .and_then(|c| unboundedness_probe(&c, a.target).map_err(CliError::from));
            let row = match outcome {
                Ok(o) => {
                    all_found &= o.found;
                    vec![
                        n.into(),
                        n0.into(),
                        a.target.into(),
                        o.found.into(),
                        o.achieved.into(),
                        o.ln_lambda1.into(),
                        o.log10_lambda1().into(),
                        o.lambda1.into(),
                        o.bisection_steps.into(),
                        if o.lambda1 == 0.0 { "lambda1_below_f64_range" } else { "" }.into(),
                    ]
                }
                Err(e) => {
                    all_found = false;
                    let mut row = vec![n.into(), n0.into(), a.target.into(), false.into()];
                    row.extend(std::iter::repeat_n(Cell::Empty, 5));
                    row.push(e.to_string().into());
                    row
                }
            };
            t.push(row);
        }
    }
    t.meta("all_found", all_found);
    Ok(Report::ok(t))
}
