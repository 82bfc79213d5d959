#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_vortexion");

/// One cheap invocation per subcommand.
pub const QUICK: &[&[&str]] = &[
    &["kernel-table", "--beta", "2", "--max_range", "3"],
    &["ratio-curve", "--steps", "4"],
    &["capacitor", "--L", "5"],
    &["landscape", "--N", "2", "--thetas", "8"],
    &["splitting-scan", "--n_min", "1", "--n_max", "2", "--thetas", "8"],
    &["barrier-scan", "--n_min", "1", "--n_max", "3", "--thetas", "8"],
    &["phase-slip", "--points", "21"],
    &["sawtooth", "--points", "21"],
    &["parity"],
    &["squid", "--points", "11"],
    &["oscillator"],
    &["ring-toy", "--ej", "100", "--levels", "3"],
    &["gate-sim", "--steps", "4"],
    &["xy-oracle", "--width", "16", "--height", "16", "--sep_a", "2", "--sep_b", "4"],
    &["regime-check"],
];

pub fn vortexion(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(BIN);
    c.args(args).env_remove("VORTEXION_CACHE_DIR").env("RUST_LOG", "warn");
    if let Some(dir) = cache {
        c.env("VORTEXION_CACHE_DIR", dir);
    }
    c.output().expect("binary runs")
}
