//! Device-level models: charge-qubit readout, vortex SQUID switch, vortex
//! oscillator, and the phase gates built from them.

mod charge_qubit;
mod gates;
mod oscillator;
mod squid;

pub use charge_qubit::{
    charge_qubit_ground_energy, charge_qubit_voltage, charge_qubit_levels, parity_measurement,
    ChargeQubitParams, Parity,
};
pub use gates::{
    conditional_oscillator_evolution, equal_up_to_phase, r_gate, rz_gate, BranchReport, Gate,
    GateSpec,
};
pub use oscillator::{oscillator_lc, ring_toy_spectrum, OscillatorLc, OscillatorParams};
pub use squid::{ac_interference_current, cos_pi, squid_energy, QubitPhase, SquidParams};
