//! Command-line interface.
//!
//! [`dispatch`] parses arguments (merged with an optional TOML invocation
//! file), runs one subcommand on a sized worker pool and returns the exit
//! code: 0 on success, 2 for invalid input, 3 when an exhaustive method's
//! capacity is exceeded, 1 otherwise.

mod args;
mod commands;
mod config;
mod number;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use args::Cli;
pub use config::{load_config, parse_config, Invocation};
pub use number::{fmt_num, round_json, SIGNIFICANT_DIGITS};

use crate::Error;

pub const THREADS_ENV: &str = "GRAPHONLAB_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Run(#[from] Error),
    #[error("write failed: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } => 2,
            CliError::Run(e) => match e {
                Error::Capacity(_) => 3,
                Error::Domain(_) | Error::Size(_) | Error::Parse { .. } | Error::Format(_) | Error::EmptyClass(_) => 2,
                Error::Inconclusive(_) | Error::Io { .. } => 1,
            },
            CliError::Output(_) => 1,
        }
    }
}

/// Runs the command line `argv` (including the program name), writing
/// results to `out` and diagnostics, usage text and echoed seeds to `err`.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<String> = argv.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let cli = match parse(&argv) {
        Ok(cli) => cli,
        Err(ParseOutcome::Display(text)) => {
            let _ = write!(out, "{text}");
            return 0;
        }
        Err(ParseOutcome::Failed(e)) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    match run(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

enum ParseOutcome {
    Display(String),
    Failed(CliError),
}

/// Merges the config file (if any) under the command-line tokens and parses.
fn parse(argv: &[String]) -> Result<Cli, ParseOutcome> {
    let program = argv.first().cloned().unwrap_or_else(|| "graphonlab".into());
    let mut tokens: Vec<String> = argv.iter().skip(1).cloned().collect();
    let mut config_path = None;
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i] == "--" {
            break;
        }
        if tokens[i] == "--config" {
            if i + 1 >= tokens.len() {
                return Err(ParseOutcome::Failed(CliError::Usage("--config needs a path".into())));
            }
            config_path = Some(tokens.remove(i + 1));
            tokens.remove(i);
        } else if let Some(p) = tokens[i].strip_prefix("--config=") {
            config_path = Some(p.to_string());
            tokens.remove(i);
        } else {
            i += 1;
        }
    }
    let merged = match config_path {
        None => tokens,
        Some(path) => {
            let inv = load_config(&path).map_err(ParseOutcome::Failed)?;
            merge(&inv, tokens).map_err(ParseOutcome::Failed)?
        }
    };
    let full = std::iter::once(program).chain(merged);
    Cli::try_parse_from(full).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseOutcome::Display(e.render().to_string()),
        _ => ParseOutcome::Failed(CliError::Usage(e.render().to_string().trim_end().trim_start_matches("error: ").to_string())),
    })
}

/// Places the config's subcommand and flags before the user's tokens,
/// dropping config flags the user sets explicitly.
fn merge(inv: &Invocation, tokens: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut leading_globals = Vec::new();
    let mut rest = tokens.into_iter().peekable();
    while let Some(t) = rest.peek() {
        if t == "--json" || t.starts_with("--threads=") {
            leading_globals.push(rest.next().expect("peeked"));
        } else if t == "--threads" {
            leading_globals.push(rest.next().expect("peeked"));
            if let Some(v) = rest.next() {
                leading_globals.push(v);
            }
        } else {
            break;
        }
    }
    let rest: Vec<String> = rest.collect();
    let given: Vec<String> = rest.iter().take_while(|t| !t.starts_with('-')).take(inv.subcommand.len()).cloned().collect();
    let user_tail = if given.is_empty() {
        rest
    } else if given == inv.subcommand {
        rest[given.len()..].to_vec()
    } else {
        return Err(CliError::Usage(format!(
            "command line names `{}` but the config file is for `{}`",
            given.join(" "),
            inv.subcommand.join(" ")
        )));
    };
    let overridden: Vec<String> = leading_globals
        .iter()
        .chain(&user_tail)
        .filter_map(|t| t.strip_prefix("--"))
        .map(|t| t.split('=').next().unwrap_or(t).to_string())
        .collect();
    let cmd = config::subcommand(&inv.subcommand).expect("validated subcommand");
    let user_positionals = user_tail.iter().any(|t| !t.starts_with('-'))
        && cmd.get_arguments().any(|a| a.is_positional());
    let mut skip = overridden;
    if user_positionals {
        skip.extend(cmd.get_arguments().filter(|a| a.is_positional()).map(|a| a.get_id().to_string()));
    }
    let mut merged = leading_globals;
    merged.extend(inv.subcommand.iter().cloned());
    merged.extend(inv.flag_tokens(&skip));
    merged.extend(user_tail);
    Ok(merged)
}

fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => Some(
                v.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{THREADS_ENV}=`{v}` is not a thread count")))?,
            ),
            _ => None,
        },
    };
    if threads == Some(0) {
        return Err(CliError::Usage("thread count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", threads.unwrap_or(0))))?;
    let mut notes = Vec::new();
    let result = pool.install(|| commands::execute(cli, &mut notes));
    for note in notes {
        writeln!(err, "{note}")?;
    }
    out.write_all(result?.as_bytes())?;
    out.flush()?;
    Ok(())
}
