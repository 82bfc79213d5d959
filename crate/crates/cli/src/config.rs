//! `key = value` run files and their resolution against defaults and flags.

use std::path::PathBuf;

use crate::commands::Command;
use crate::error::CliError;
use crate::params::{Params, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Keys that steer the run rather than the computation.
pub const RESERVED: [&str; 3] = ["format", "output", "cache_dir"];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
}

/// Unvalidated file contents: `(line, key, value)` in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub command: Option<(usize, String)>,
    pub entries: Vec<(usize, String, String)>,
}

fn line_error(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Param(format!("line {line}: {msg}"))
}

pub fn parse_raw(text: &str) -> Result<RawConfig, CliError> {
    let mut raw = RawConfig::default();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| line_error(n, format!("expected `key = value`, got '{body}'")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(line_error(n, format!("expected `key = value`, got '{body}'")));
        }
        if key == "command" {
            if raw.command.is_some() {
                return Err(line_error(n, "command given twice"));
            }
            raw.command = Some((n, value.to_string()));
        } else {
            if raw.entries.iter().any(|(_, k, _)| k == key) {
                return Err(line_error(n, format!("duplicate key '{key}'")));
            }
            raw.entries.push((n, key.to_string(), value.to_string()));
        }
    }
    Ok(raw)
}

/// Parses a run file that names its own command.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let raw = parse_raw(text)?;
    let (line, name) = raw.command.clone().ok_or_else(|| CliError::Param("missing `command = <name>` line".into()))?;
    let command = Command::from_name(&name).ok_or_else(|| line_error(line, format!("unknown command '{name}'")))?;
    resolve(command, &raw, &[])
}

/// Merges defaults, file entries and flags, in rising precedence, and range
/// checks every value.
pub fn resolve(command: Command, file: &RawConfig, flags: &[(String, String)]) -> Result<RunConfig, CliError> {
    if let Some((line, name)) = &file.command {
        if name != command.name() {
            return Err(line_error(*line, format!("file is for '{name}', not '{}'", command.name())));
        }
    }
    let specs = command.params();
    for (line, key, _) in &file.entries {
        if !RESERVED.contains(&key.as_str()) && !specs.iter().any(|s| s.key == key) {
            return Err(line_error(*line, format!("unknown key '{key}' for {}", command.name())));
        }
    }
    let lookup = |key: &str| -> Option<(Option<usize>, &str)> {
        flags
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| (None, v.as_str()))
            .or_else(|| file.entries.iter().find(|(_, k, _)| k == key).map(|(l, _, v)| (Some(*l), v.as_str())))
    };
    let mut values = Vec::with_capacity(specs.len());
    for spec in specs {
        let (line, raw) = lookup(spec.key).unwrap_or((None, spec.default));
        let v: Value = spec.parse(raw).map_err(|msg| match line {
            Some(l) => line_error(l, msg),
            None => CliError::Param(msg),
        })?;
        values.push((spec.key, v));
    }
    let params = Params::new(values);
    command.check(&params)?;

    let format = match lookup("format") {
        Some((line, f)) => Format::parse(f).ok_or_else(|| {
            let msg = format!("format must be csv or json, got '{f}'");
            line.map_or_else(|| CliError::Param(msg.clone()), |l| line_error(l, &msg))
        })?,
        None => Format::Csv,
    };
    Ok(RunConfig {
        command,
        params,
        format,
        output: lookup("output").map(|(_, p)| PathBuf::from(p)),
        cache_dir: lookup("cache_dir").map(|(_, p)| PathBuf::from(p)),
    })
}
