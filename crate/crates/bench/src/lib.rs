//! Shared fixtures for the criterion benchmarks.

use vortexion_core::spectra::LadderSpec;
use vortexion_core::{build_kernel_table, KernelTable};

/// Ladder in the strongly anisotropic regime with a matching kernel table.
pub fn ladder(n_sites: usize) -> (LadderSpec, KernelTable) {
    let beta = 1e6;
    let table = build_kernel_table(beta, n_sites.max(2) - 1, 1e-12).expect("valid table");
    (LadderSpec::new(n_sites, 1.0, beta, 0.005), table)
}
