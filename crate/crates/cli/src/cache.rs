//! Kernel tables persisted as text files keyed by `(β, tol, max_range)`.

use std::fs;
use std::path::{Path, PathBuf};

use log::{debug, warn};
use vortexion_core::kernel::{read_cache, write_cache};
use vortexion_core::{build_kernel_table, KernelTable};

use crate::error::CliError;

pub const CACHE_ENV: &str = "VORTEXION_CACHE_DIR";

pub fn cache_path(dir: &Path, beta: f64, max_range: usize, tol: f64) -> PathBuf {
    dir.join(format!("kernel-{:016x}-{:016x}-{max_range}.txt", beta.to_bits(), tol.to_bits()))
}

/// Loads a table from `dir` when a valid file exists, otherwise computes it
/// and, with a directory, stores it. Corrupt files are recomputed.
pub fn kernel_table(dir: Option<&Path>, beta: f64, max_range: usize, tol: f64) -> Result<KernelTable, CliError> {
    let Some(dir) = dir else {
        return Ok(build_kernel_table(beta, max_range, tol)?);
    };
    let path = cache_path(dir, beta, max_range, tol);
    if let Ok(text) = fs::read_to_string(&path) {
        match read_cache(&text) {
            Ok(t) if t.beta() == beta && t.tol() == tol && t.max_range() == max_range => {
                debug!("kernel cache hit {}", path.display());
                return Ok(t);
            }
            Ok(_) => warn!("kernel cache {} holds a different table; recomputing", path.display()),
            Err(e) => warn!("kernel cache {} rejected ({e}); recomputing", path.display()),
        }
    }
    let table = build_kernel_table(beta, max_range, tol)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, write_cache(&table))?;
    fs::rename(&tmp, &path)?;
    debug!("kernel cache stored {}", path.display());
    Ok(table)
}
