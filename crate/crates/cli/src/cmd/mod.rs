mod bisep;
mod crossval;
mod probe;
mod sequence;
mod sweep;

use std::time::{SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqgme::dense::DenseCap;

use crate::args::{Cli, Command, GlobalArgs};
use crate::error::{CliError, CliResult};
use crate::table::Table;
use crate::Report;

pub(crate) fn dispatch(cli: &Cli) -> CliResult<Report> {
    let g = &cli.global;
    if g.tol.is_nan() || g.tol < 0.0 {
        return Err(CliError::Usage(format!("--tol must be nonnegative, got {}", g.tol)));
    }
    let mut report = match &cli.command {
        Command::Sequence(a) => sequence::run(g, a)?,
        Command::Sweep(a) => sweep::run(g, a)?,
        Command::Crossval(a) => crossval::run(g, a)?,
        Command::Bisep(a) => bisep::run(g, a)?,
        Command::Probe(a) => probe::run(g, a)?,
    };
    if g.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report.table.meta("generated_unix", secs);
    }
    Ok(report)
}

/// Metadata lines shared by every command.
pub(crate) fn base_table(g: &GlobalArgs, command: &str, columns: &[&str]) -> Table {
    let mut t = Table::new(columns);
    t.meta("version", env!("CARGO_PKG_VERSION"));
    t.meta("command", command);
    t.meta("seed", g.seed);
    t
}

pub(crate) fn cap(allow_large: bool) -> DenseCap {
    if allow_large {
        DenseCap::Extended
    } else {
        DenseCap::Default
    }
}

/// Independent random stream number `stream` derived from the global seed.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn thread_pool(threads: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}
