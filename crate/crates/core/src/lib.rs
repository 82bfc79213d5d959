//! Numerical engine for vortex-exciton protected qubits in anisotropic
//! Josephson junction arrays.
//!
//! - [`kernel`]: the vortex interaction kernel `I'(dx, dy; β)` and its tables.
//! - [`coulombgas`]: classical vortex energetics and an XY relaxation check.
//! - [`spectra`]: exact diagonalization of chain and ladder models.
//! - [`devices`]: charge-qubit readout, vortex SQUID, oscillator and gates.

pub mod coulombgas;
pub mod devices;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod quadrature;
pub mod spectra;

pub use coulombgas::{
    capacitor_energy_coulomb, capacitor_energy_exact, capacitor_ratio, config_energy,
    dipole_energy, xy_relax_pair_energy, CapacitorSpec, Orientation, VortexConfiguration,
    XYLatticeSpec,
};
pub use devices::{ChargeQubitParams, GateSpec, OscillatorParams, SquidParams};
pub use error::{Error, Result};
pub use kernel::{
    anisotropy_ratio, build_kernel_table, interaction_kernel, AnisotropyBeta, KernelCache,
    KernelTable,
};
pub use linalg::Solver;
pub use spectra::{BandCurve, ChainSpec, LadderSpec};

/// Crate version, echoed into every CLI result envelope.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
