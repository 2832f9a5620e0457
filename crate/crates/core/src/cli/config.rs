//! TOML invocation files.
//!
//! ```toml
//! subcommand = "census"
//! class = "kt_free:3"
//! n_max = 6
//! ```
//!
//! Every key other than `subcommand` is a long flag of that subcommand
//! (underscores and dashes are interchangeable). Booleans switch flags on,
//! arrays become comma lists or repeated flags.

use std::path::{Path, PathBuf};

use clap::{ArgAction, CommandFactory};
use toml::Value;

use super::args::Cli;
use super::CliError;

/// A subcommand with its flags, ready to be merged with command-line tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Invocation {
    /// Subcommand path, e.g. `["graphon", "make"]`.
    pub subcommand: Vec<String>,
    /// `(long name, value)` pairs; positional arguments use their id as name.
    pub flags: Vec<(String, Option<String>)>,
    pub config: Option<PathBuf>,
}

impl Invocation {
    /// Command-line tokens for the flags, skipping those whose long name is
    /// in `overridden`.
    pub fn flag_tokens(&self, overridden: &[String]) -> Vec<String> {
        let cmd = subcommand(&self.subcommand).expect("validated subcommand");
        let mut out = Vec::new();
        for (name, value) in &self.flags {
            if overridden.contains(name) {
                continue;
            }
            let positional = cmd.get_arguments().any(|a| a.is_positional() && a.get_id().as_str() == name);
            match (positional, value) {
                (true, Some(v)) => out.push(v.clone()),
                (false, Some(v)) => out.push(format!("--{name}={v}")),
                (false, None) => out.push(format!("--{name}")),
                (true, None) => {}
            }
        }
        out
    }
}

/// Reads and validates an invocation file.
pub fn load_config(path: impl AsRef<Path>) -> Result<Invocation, CliError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    let mut inv = parse_config(&text)?;
    inv.config = Some(path.to_path_buf());
    Ok(inv)
}

/// Parses invocation text; errors carry 1-based line numbers.
pub fn parse_config(text: &str) -> Result<Invocation, CliError> {
    let table: toml::Table = toml::from_str(text).map_err(|e| CliError::Config {
        line: e.span().map_or(0, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;
    let sub = match table.get("subcommand") {
        Some(Value::String(s)) => s.split_whitespace().map(str::to_string).collect::<Vec<_>>(),
        Some(_) => return Err(config_error(text, "subcommand", "`subcommand` must be a string")),
        None => {
            return Err(CliError::Config {
                line: 1,
                message: "missing `subcommand` key".into(),
            })
        }
    };
    let cmd = subcommand(&sub).ok_or_else(|| config_error(text, "subcommand", format!("unknown subcommand `{}`", sub.join(" "))))?;
    let mut flags = Vec::new();
    for (key, value) in &table {
        if key == "subcommand" {
            continue;
        }
        let name = key.replace('_', "-");
        let arg = cmd
            .get_arguments()
            .find(|a| a.get_long() == Some(name.as_str()) || (a.is_positional() && a.get_id().as_str() == name))
            .filter(|_| name != "config" && name != "help" && name != "version")
            .ok_or_else(|| config_error(text, key, format!("unknown key `{key}` for `{}`", sub.join(" "))))?;
        let is_switch = matches!(arg.get_action(), ArgAction::SetTrue);
        let scalar = |v: &Value| -> Result<String, CliError> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Integer(i) => Ok(i.to_string()),
                Value::Float(f) => Ok(f.to_string()),
                Value::Boolean(b) => Ok(b.to_string()),
                _ => Err(config_error(text, key, format!("`{key}` must be a scalar or an array of scalars"))),
            }
        };
        match value {
            Value::Boolean(b) if is_switch => {
                if *b {
                    flags.push((name, None));
                }
            }
            _ if is_switch => return Err(config_error(text, key, format!("`{key}` is a switch and takes true or false"))),
            Value::Array(items) if arg.get_value_delimiter().is_some() => {
                let parts = items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
                flags.push((name, Some(parts.join(","))));
            }
            Value::Array(items) if matches!(arg.get_action(), ArgAction::Append) => {
                for item in items {
                    flags.push((name.clone(), Some(scalar(item)?)));
                }
            }
            other => flags.push((name, Some(scalar(other)?))),
        }
    }
    let inv = Invocation {
        subcommand: sub,
        flags,
        config: None,
    };
    validate(text, &inv)?;
    Ok(inv)
}

/// Checks each flag value against the subcommand's parsers, ignoring
/// required-argument rules (those may be satisfied on the command line).
fn validate(text: &str, inv: &Invocation) -> Result<(), CliError> {
    let cmd = subcommand(&inv.subcommand)
        .expect("validated subcommand")
        .mut_args(|a| a.required(false))
        .arg_required_else_help(false)
        .no_binary_name(true);
    for (i, (name, _)) in inv.flags.iter().enumerate() {
        let one = Invocation {
            subcommand: inv.subcommand.clone(),
            flags: vec![inv.flags[i].clone()],
            config: None,
        };
        if let Err(e) = cmd.clone().try_get_matches_from(one.flag_tokens(&[])) {
            let key = key_in_text(text, name);
            return Err(config_error(text, &key, first_line(&e.to_string())));
        }
    }
    Ok(())
}

fn first_line(s: &str) -> String {
    s.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string()
}

/// The subcommand definition for a path such as `["graphon", "make"]`.
pub(crate) fn subcommand(path: &[String]) -> Option<clap::Command> {
    let mut cmd = Cli::command();
    cmd.build();
    if path.is_empty() {
        return None;
    }
    for name in path {
        cmd = cmd.find_subcommand(name)?.clone();
    }
    if cmd.has_subcommands() {
        return None;
    }
    Some(cmd)
}

fn key_in_text(text: &str, name: &str) -> String {
    let underscored = name.replace('-', "_");
    if text.lines().any(|l| line_has_key(l, &underscored)) {
        underscored
    } else {
        name.to_string()
    }
}

fn line_has_key(line: &str, key: &str) -> bool {
    let l = line.trim_start();
    let rest = l
        .strip_prefix(key)
        .or_else(|| l.strip_prefix(&format!("\"{key}\"")))
        .or_else(|| l.strip_prefix(&format!("'{key}'")));
    rest.is_some_and(|r| r.trim_start().starts_with('='))
}

fn config_error(text: &str, key: &str, message: impl Into<String>) -> CliError {
    let line = text.lines().position(|l| line_has_key(l, key)).map_or(0, |i| i + 1);
    CliError::Config {
        line,
        message: message.into(),
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}
