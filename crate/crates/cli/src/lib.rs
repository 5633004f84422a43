//! Command-line front end for `seqgme`.
//!
//! Every subcommand builds a [`Table`] and writes it as CSV or JSON. Exit
//! codes: 0 success, 1 usage error, 2 tolerance violation, 3 refusal because
//! the dense-simulation cap would be exceeded.

pub mod args;
mod cmd;
pub mod config_file;
pub mod error;
pub mod grid;
pub mod plot;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;

use args::{Cli, Format};
pub use error::{CliError, CliResult};
pub use table::{Cell, Table};

/// Result of one subcommand.
pub struct Report {
    pub table: Table,
    /// Set when a tolerance check failed; the table is still written.
    pub violation: Option<String>,
}

impl Report {
    pub fn ok(table: Table) -> Self {
        Report { table, violation: None }
    }
}

fn parse(argv: &[OsString]) -> CliResult<Cli> {
    let Some(path) = config_file::find_config_path(argv) else {
        return Cli::try_parse_from(argv).map_err(clap_error);
    };
    // without a subcommand clap produces the right usage message
    let Some(sub) = config_file::find_subcommand(argv) else {
        return Cli::try_parse_from(argv).map_err(clap_error);
    };
    let path = std::path::PathBuf::from(path);
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spliced = config_file::splice(argv, &sub, &text)?;
    Cli::try_parse_from(spliced).map_err(clap_error)
}

fn clap_error(e: clap::Error) -> CliError {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = e.print();
            std::process::exit(0);
        }
        _ => {
            let text = e.render().to_string();
            let text = text.trim_end().strip_prefix("error: ").unwrap_or(text.trim_end());
            CliError::Usage(text.to_string())
        }
    }
}

fn render(cli: &Cli, table: &Table) -> String {
    match cli.global.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.global.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes its output.
pub fn run(argv: &[OsString]) -> CliResult<()> {
    let cli = parse(argv)?;
    let report = cmd::dispatch(&cli)?;
    emit(&cli, &render(&cli, &report.table))?;
    match report.violation {
        Some(msg) => Err(CliError::Tolerance(msg)),
        None => Ok(()),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args(argv: Vec<OsString>) -> i32 {
    match run(&argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
