//! Argument parsing and the top-level run loop.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Arg, ArgAction, ArgMatches};
use log::info;

use crate::cache::CACHE_ENV;
use crate::commands::Command;
use crate::config::{parse_raw, resolve, Format, RawConfig, RunConfig};
use crate::error::CliError;

/// Flags shared by every computing subcommand, with their config-file keys.
const RUN_FLAGS: [(&str, &str, &str); 3] = [
    ("format", "format", "output format: csv or json [default: csv]"),
    ("output", "output", "write the result here instead of standard output"),
    ("cache-dir", "cache_dir", "directory for kernel-table files [default: $VORTEXION_CACHE_DIR]"),
];

fn run_flags(cmd: clap::Command) -> clap::Command {
    RUN_FLAGS.iter().fold(cmd, |c, &(long, key, help)| c.arg(Arg::new(key).long(long).value_name("VALUE").help(help)))
}

pub fn cli() -> clap::Command {
    let mut app = clap::Command::new("vortexion")
        .version(vortexion_core::VERSION)
        .about("Vortex interaction kernels, ladder spectra and device models")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for c in Command::ALL {
        let mut sub = clap::Command::new(c.name()).about(c.about()).arg(
            Arg::new("config").long("config").value_name("FILE").help("read `key = value` parameters from FILE"),
        );
        for p in c.params() {
            sub = sub.arg(Arg::new(p.key).long(p.key).value_name("VALUE").help(p.describe()).action(ArgAction::Set));
        }
        app = app.subcommand(run_flags(sub));
    }
    app.subcommand(run_flags(
        clap::Command::new("run")
            .about("Run the command named inside a config file")
            .arg(Arg::new("file").value_name("FILE").required(true)),
    ))
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{path}: {e}"))))
}

fn flag_values(m: &ArgMatches, keys: impl Iterator<Item = &'static str>) -> Vec<(String, String)> {
    keys.filter_map(|k| m.get_one::<String>(k).map(|v| (k.to_string(), v.clone()))).collect()
}

fn configure(m: &ArgMatches) -> Result<RunConfig, CliError> {
    let (name, sub) = m.subcommand().expect("subcommand required");
    let reserved = RUN_FLAGS.iter().map(|f| f.1);
    let (command, raw, flags) = if name == "run" {
        let raw = parse_raw(&read(sub.get_one::<String>("file").expect("required"))?)?;
        let (line, cname) = raw.command.clone().ok_or_else(|| CliError::Param("missing `command = <name>` line".into()))?;
        let command = Command::from_name(&cname)
            .ok_or_else(|| CliError::Param(format!("line {line}: unknown command '{cname}'")))?;
        (command, raw, flag_values(sub, reserved))
    } else {
        let command = Command::from_name(name).expect("registered subcommand");
        let raw = match sub.get_one::<String>("config") {
            Some(path) => parse_raw(&read(path)?)?,
            None => RawConfig::default(),
        };
        (command, raw, flag_values(sub, command.params().iter().map(|p| p.key).chain(reserved)))
    };
    let mut cfg = resolve(command, &raw, &flags)?;
    if cfg.cache_dir.is_none() {
        cfg.cache_dir = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    }
    Ok(cfg)
}

/// Runs the configured command and renders its payload.
pub fn execute(cfg: &RunConfig) -> Result<(String, Vec<String>), CliError> {
    let table = cfg.command.execute(&cfg.params, cfg.cache_dir.as_deref())?;
    let text = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(cfg.command.name(), &cfg.params),
    };
    Ok((text, table.diagnostics))
}

fn emit(cfg: &RunConfig) -> Result<(), CliError> {
    let (text, diagnostics) = execute(cfg)?;
    for d in &diagnostics {
        info!("{d}");
    }
    match &cfg.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match configure(&matches).and_then(|cfg| emit(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
