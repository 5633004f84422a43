//! `--config` files: `key = value` lines, `#` comments, blank lines ignored.
//! Keys are long flag names without the dashes. Entries are spliced in
//! directly after the subcommand so later command-line flags override them.

use std::ffi::OsString;

use clap::CommandFactory;

use crate::args::Cli;
use crate::error::{CliError, CliResult};

/// Global flags that take a value, needed to find the subcommand token.
const GLOBAL_VALUED: [&str; 6] = ["--out", "--format", "--seed", "--threads", "--tol", "--config"];

pub fn parse_entries(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Command-line tokens for `entries` under `subcommand`.
fn to_flags(subcommand: &str, entries: &[(String, String)]) -> CliResult<Vec<OsString>> {
    let root = Cli::command();
    let sub = root
        .find_subcommand(subcommand)
        .ok_or_else(|| CliError::Usage(format!("unknown subcommand {subcommand}")))?;
    let mut out = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err(CliError::Usage("config files cannot include other config files".into()));
        }
        let arg = sub
            .get_arguments()
            .chain(root.get_arguments())
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| CliError::Usage(format!("unknown config key {key:?}")))?;
        if arg.get_action().takes_values() {
            out.push(format!("--{key}").into());
            out.push(value.into());
        } else {
            match value.as_str() {
                "true" => out.push(format!("--{key}").into()),
                "false" => {}
                _ => return Err(CliError::Usage(format!("config key {key} expects true or false"))),
            }
        }
    }
    Ok(out)
}

/// Index of the subcommand token in `argv` (skipping the program name and
/// values of global flags).
fn subcommand_index(argv: &[OsString], subcommand: &str) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let tok = argv[i].to_string_lossy();
        if tok == subcommand {
            return Some(i);
        }
        if GLOBAL_VALUED.contains(&tok.as_ref()) {
            i += 1;
        }
        i += 1;
    }
    None
}

/// Path given to `--config`, found without running the full parser so that
/// required flags may come from the file.
pub fn find_config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter().skip(1);
    while let Some(tok) = it.next() {
        let t = tok.to_string_lossy();
        if t == "--" {
            break;
        }
        if t == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = t.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

/// First token naming a subcommand, skipping values of global flags.
pub fn find_subcommand(argv: &[OsString]) -> Option<String> {
    let root = Cli::command();
    let mut i = 1;
    while i < argv.len() {
        let tok = argv[i].to_string_lossy();
        if root.find_subcommand(tok.as_ref()).is_some() {
            return Some(tok.into_owned());
        }
        if GLOBAL_VALUED.contains(&tok.as_ref()) {
            i += 1;
        }
        i += 1;
    }
    None
}

/// `argv` with the entries of the config file spliced in after the subcommand.
pub fn splice(argv: &[OsString], subcommand: &str, text: &str) -> CliResult<Vec<OsString>> {
    let flags = to_flags(subcommand, &parse_entries(text)?)?;
    let at = subcommand_index(argv, subcommand)
        .ok_or_else(|| CliError::Usage("cannot locate the subcommand".into()))?;
    let mut out = argv[..=at].to_vec();
    out.extend(flags);
    out.extend_from_slice(&argv[at + 1..]);
    Ok(out)
}
