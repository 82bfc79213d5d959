//! Subcommand table: declared parameters, cross-checks and dispatch.

use std::f64::consts::{PI, TAU};
use std::path::Path;

use vortexion_core::coulombgas::{capacitor_energy_coulomb, capacitor_energy_exact, CapacitorSpec};
use vortexion_core::devices::*;
use vortexion_core::spectra::*;
use vortexion_core::{anisotropy_ratio, xy_relax_pair_energy, Solver, XYLatticeSpec};

use crate::cache::kernel_table;
use crate::error::CliError;
use crate::output::{format_float, Table};
use crate::params::{require, Bound, ParamSpec, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    KernelTable,
    RatioCurve,
    Capacitor,
    Landscape,
    SplittingScan,
    BarrierScan,
    PhaseSlip,
    Sawtooth,
    Parity,
    Squid,
    Oscillator,
    RingToy,
    GateSim,
    XyOracle,
    RegimeCheck,
}

const TOL: ParamSpec = ParamSpec::float("tol", "1e-10", "-", "kernel quadrature tolerance", Bound::Between(1e-15, 1e-3));
const BETA: ParamSpec = ParamSpec::float("beta", "1e6", "-", "anisotropy EJy/EJx", Bound::Between(1e-3, 1e12));
const EJY: ParamSpec = ParamSpec::float("ejy", "1", "energy", "vertical Josephson energy", Bound::Positive);
const ECY: ParamSpec = ParamSpec::float("ecy", "0.005", "energy", "vertical charging energy", Bound::Positive);
const V_MAX: ParamSpec = ParamSpec::int("v_max", "1", "vorticity cutoff per site", Bound::Between(1.0, 4.0));
const THETAS: ParamSpec = ParamSpec::int("thetas", "24", "even number of samples of the boundary phase on [0, 2pi)", Bound::Between(4.0, 4096.0));
const SOLVER: ParamSpec = ParamSpec::choice("solver", "auto", "ground-state eigensolver", &["auto", "dense", "lanczos"]);
const LADDER_TOL: ParamSpec = ParamSpec::float("tol", "1e-12", "-", "kernel quadrature tolerance", Bound::Between(1e-15, 1e-3));
const EC: ParamSpec = ParamSpec::float("ec", "1", "energy", "charging energy", Bound::Positive);

const SCAN: &[ParamSpec] = &[
    ParamSpec::int("n_min", "2", "smallest rung count", Bound::Between(1.0, 8.0)),
    ParamSpec::int("n_max", "4", "largest rung count", Bound::Between(1.0, 8.0)),
    BETA,
    EJY,
    ECY,
    V_MAX,
    THETAS,
    SOLVER,
    LADDER_TOL,
];

const OSC: [ParamSpec; 4] = [
    ParamSpec::int("M", "100", "junctions along each track", Bound::Between(1.0, 1e9)),
    ParamSpec::int("N", "10", "rungs forming the capacitor", Bound::Between(1.0, 1e9)),
    ParamSpec::float("ej", "1", "energy", "Josephson energy of the capacitor rungs", Bound::Positive),
    ParamSpec::float("ecr", "1", "energy", "rung charging energy", Bound::Positive),
];

impl Command {
    pub const ALL: [Command; 15] = [
        Command::KernelTable,
        Command::RatioCurve,
        Command::Capacitor,
        Command::Landscape,
        Command::SplittingScan,
        Command::BarrierScan,
        Command::PhaseSlip,
        Command::Sawtooth,
        Command::Parity,
        Command::Squid,
        Command::Oscillator,
        Command::RingToy,
        Command::GateSim,
        Command::XyOracle,
        Command::RegimeCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::KernelTable => "kernel-table",
            Command::RatioCurve => "ratio-curve",
            Command::Capacitor => "capacitor",
            Command::Landscape => "landscape",
            Command::SplittingScan => "splitting-scan",
            Command::BarrierScan => "barrier-scan",
            Command::PhaseSlip => "phase-slip",
            Command::Sawtooth => "sawtooth",
            Command::Parity => "parity",
            Command::Squid => "squid",
            Command::Oscillator => "oscillator",
            Command::RingToy => "ring-toy",
            Command::GateSim => "gate-sim",
            Command::XyOracle => "xy-oracle",
            Command::RegimeCheck => "regime-check",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn about(self) -> &'static str {
        match self {
            Command::KernelTable => "Tabulate the vortex interaction kernel I'(dx, dy; beta)",
            Command::RatioCurve => "Anisotropy ratio I'(1,0)/I'(0,1) over a range of beta",
            Command::Capacitor => "Plate capacitor energy against its Q^2/2C estimate",
            Command::Landscape => "Ground-state energy of the vortex ladder against boundary phase",
            Command::SplittingScan => "Well asymmetry |E(0) - E(pi)| against ladder length",
            Command::BarrierScan => "Barrier height between the wells against ladder length",
            Command::PhaseSlip => "Phase-slip parabolas and the tight-binding band",
            Command::Sawtooth => "Charge-qubit island voltage against gate charge",
            Command::Parity => "Parity readout from the voltage sign",
            Command::Squid => "Vortex SQUID energy and interference current against charge",
            Command::Oscillator => "Capacitance, inductance and impedance of the vortex oscillator",
            Command::RingToy => "Low levels of the one-mode ring Hamiltonian",
            Command::GateSim => "Qubit-conditioned oscillator evolution",
            Command::XyOracle => "XY-relaxed pair energies against kernel predictions",
            Command::RegimeCheck => "Margins of the working-regime inequalities",
        }
    }

    pub fn params(self) -> &'static [ParamSpec] {
        match self {
            Command::KernelTable => {
                const P: &[ParamSpec] = &[
                ParamSpec::float("beta", "1", "-", "anisotropy EJy/EJx", Bound::Between(1e-3, 1e12)),
                ParamSpec::int("max_range", "4", "largest |dx| and |dy|", Bound::Between(0.0, 512.0)),
                TOL,
                ];
                P
            }
            Command::RatioCurve => {
                const P: &[ParamSpec] = &[
                ParamSpec::float("beta_min", "1", "-", "first beta", Bound::Between(1e-3, 1e12)),
                ParamSpec::float("beta_max", "8", "-", "last beta", Bound::Between(1e-3, 1e12)),
                ParamSpec::int("steps", "15", "evenly spaced beta values", Bound::Between(1.0, 100000.0)),
                TOL,
                ];
                P
            }
            Command::Capacitor => {
                const P: &[ParamSpec] = &[
                ParamSpec::int("L", "20", "plate length in lattice spacings", Bound::Between(1.0, 400.0)),
                ParamSpec::float("ej", "1", "energy", "isotropic Josephson energy", Bound::Positive),
                TOL,
                ];
                P
            }
            Command::Landscape => {
                const P: &[ParamSpec] = &[
                ParamSpec::int("N", "3", "rungs of the ladder", Bound::Between(1.0, 8.0)),
                BETA,
                EJY,
                ECY,
                V_MAX,
                ParamSpec::int("kernel_range", "0", "largest |dx| kept in the kernel, 0 for all", Bound::Between(0.0, 64.0)),
                THETAS,
                SOLVER,
                LADDER_TOL,
                ];
                P
            }
            Command::SplittingScan | Command::BarrierScan => SCAN,
            Command::PhaseSlip => {
                const P: &[ParamSpec] = &[
                ParamSpec::float("ej", "1", "energy", "chain Josephson energy", Bound::Positive),
                EC,
                ParamSpec::int("n", "10", "junctions in the chain", Bound::Between(1.0, 1e9)),
                ParamSpec::float("t_slip", "0.05", "energy", "phase-slip amplitude, below ej", Bound::NonNegative),
                ParamSpec::int("periods", "1", "2pi periods of gamma, centred on 0", Bound::Between(1.0, 64.0)),
                ParamSpec::int("points", "201", "gamma samples", Bound::Between(2.0, 1e6)),
                ];
                P
            }
            Command::Sawtooth => {
                const P: &[ParamSpec] = &[
                EC,
                ParamSpec::float("ej", "0.01", "energy", "Josephson energy", Bound::NonNegative),
                ParamSpec::int("n_cut", "12", "charge states on each side", Bound::Between(5.0, 4096.0)),
                ParamSpec::float("ng_min", "-1", "2e", "first gate charge", Bound::Between(-1e6, 1e6)),
                ParamSpec::float("ng_max", "1", "2e", "last gate charge", Bound::Between(-1e6, 1e6)),
                ParamSpec::int("points", "201", "gate-charge samples", Bound::Between(2.0, 1e6)),
                ];
                P
            }
            Command::Parity => {
                const P: &[ParamSpec] = &[
                EC,
                ParamSpec::float("ej", "0.01", "energy", "Josephson energy", Bound::NonNegative),
                ParamSpec::int("n_min", "-8", "first charge number", Bound::Between(-1e6, 1e6)),
                ParamSpec::int("n_max", "8", "last charge number", Bound::Between(-1e6, 1e6)),
                ];
                P
            }
            Command::Squid => {
                const P: &[ParamSpec] = &[
                EC,
                ParamSpec::float("q_min", "0", "2e", "first island charge", Bound::Between(-1e6, 1e6)),
                ParamSpec::float("q_max", "1", "2e", "last island charge", Bound::Between(-1e6, 1e6)),
                ParamSpec::int("points", "101", "charge samples", Bound::Between(2.0, 1e6)),
                ParamSpec::float("dtheta", "0", "rad", "phase difference across the SQUID", Bound::Any),
                ];
                P
            }
            Command::Oscillator => &OSC,
            Command::RingToy => {
                const P: &[ParamSpec] = &[
                EC,
                ParamSpec::float("ej", "1e4", "energy", "Josephson energy", Bound::Positive),
                ParamSpec::int("n_ring", "8", "junctions in the ring", Bound::Between(1.0, 1e9)),
                ParamSpec::int("levels", "6", "levels reported", Bound::Between(1.0, 64.0)),
                ];
                P
            }
            Command::GateSim => {
                const P: &[ParamSpec] = &[
                OSC[0],
                OSC[1],
                OSC[2],
                OSC[3],
                ParamSpec::float("coupling", "1", "energy", "SQUID switch coupling", Bound::Positive),
                ParamSpec::int("fock_cut", "64", "oscillator Fock states", Bound::Between(2.0, 2048.0)),
                ParamSpec::float("periods", "1", "period", "evolution time in oscillator periods", Bound::Between(0.0, 1e4)),
                ParamSpec::int("steps", "40", "time steps", Bound::Between(1.0, 1e6)),
                ];
                P
            }
            Command::XyOracle => {
                const P: &[ParamSpec] = &[
                ParamSpec::int("width", "48", "lattice sites along x", Bound::Between(4.0, 4096.0)),
                ParamSpec::int("height", "48", "lattice sites along y", Bound::Between(4.0, 4096.0)),
                ParamSpec::float("ejx", "1", "energy", "horizontal Josephson energy", Bound::Positive),
                ParamSpec::float("ejy", "1", "energy", "vertical Josephson energy", Bound::Positive),
                ParamSpec::choice("axis", "x", "direction of the pair separation", &["x", "y"]),
                ParamSpec::int("sep_a", "4", "first separation", Bound::Between(1.0, 1024.0)),
                ParamSpec::int("sep_b", "8", "second separation", Bound::Between(1.0, 1024.0)),
                ParamSpec::float("relax_tol", "1e-10", "rad", "largest phase update at convergence", Bound::Positive),
                ParamSpec::int("max_iters", "20000", "relaxation sweep limit", Bound::Between(1.0, 1e8)),
                TOL,
                ];
                P
            }
            Command::RegimeCheck => {
                const P: &[ParamSpec] = &[
                EJY,
                ParamSpec::float("ejx", "1e-10", "energy", "horizontal Josephson energy", Bound::Positive),
                ParamSpec::float("ecy", "1e-5", "energy", "vertical charging energy", Bound::Positive),
                ParamSpec::float("ecx", "1e-7", "energy", "horizontal charging energy", Bound::Positive),
                ];
                P
            }
        }
    }

    /// Preconditions that span several parameters.
    pub fn check(self, p: &Params) -> Result<(), CliError> {
        match self {
            Command::RatioCurve => require(p.f64("beta_min") <= p.f64("beta_max"), "beta_min must not exceed beta_max"),
            Command::Landscape => require(p.int("thetas") % 2 == 0, "thetas must be even so that pi is sampled"),
            Command::SplittingScan => {
                require(p.int("thetas") % 2 == 0, "thetas must be even so that pi is sampled")?;
                require(p.int("n_min") < p.int("n_max"), "n_min must be below n_max")
            }
            Command::BarrierScan => {
                require(p.int("thetas") % 2 == 0, "thetas must be even so that pi is sampled")?;
                require(p.int("n_max") - p.int("n_min") >= 2, "barrier scan needs at least three lengths")
            }
            Command::PhaseSlip => require(p.f64("t_slip") < p.f64("ej"), "t_slip must be below ej"),
            Command::Sawtooth => require(p.f64("ng_min") <= p.f64("ng_max"), "ng_min must not exceed ng_max"),
            Command::Parity => require(p.int("n_min") <= p.int("n_max"), "n_min must not exceed n_max"),
            Command::Squid => require(p.f64("q_min") <= p.f64("q_max"), "q_min must not exceed q_max"),
            Command::XyOracle => require(p.int("sep_a") != p.int("sep_b"), "sep_a and sep_b must differ"),
            _ => Ok(()),
        }
    }

    pub fn execute(self, p: &Params, cache: Option<&Path>) -> Result<Table, CliError> {
        match self {
            Command::KernelTable => kernel_table_cmd(p, cache),
            Command::RatioCurve => ratio_curve(p),
            Command::Capacitor => capacitor(p, cache),
            Command::Landscape => landscape(p, cache),
            Command::SplittingScan => length_scan(p, cache, false),
            Command::BarrierScan => length_scan(p, cache, true),
            Command::PhaseSlip => phase_slip(p),
            Command::Sawtooth => sawtooth(p),
            Command::Parity => parity(p),
            Command::Squid => squid(p),
            Command::Oscillator => oscillator(p),
            Command::RingToy => ring_toy(p),
            Command::GateSim => gate_sim(p),
            Command::XyOracle => xy_oracle(p, cache),
            Command::RegimeCheck => regime(p, cache),
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn solver(p: &Params) -> Solver {
    match p.text("solver") {
        "dense" => Solver::Dense,
        "lanczos" => Solver::Lanczos,
        _ => Solver::Auto,
    }
}

fn kernel_table_cmd(p: &Params, cache: Option<&Path>) -> Result<Table, CliError> {
    let t = kernel_table(cache, p.f64("beta"), p.usize("max_range"), p.f64("tol"))?;
    let mut out = Table::new(&["dx", "dy", "value"]);
    for (dx, dy, v) in t.entries() {
        out.push(vec![dx.into(), dy.into(), v.into()]);
    }
    Ok(out)
}

fn ratio_curve(p: &Params) -> Result<Table, CliError> {
    let mut out = Table::new(&["beta", "ratio"]);
    for beta in linspace(p.f64("beta_min"), p.f64("beta_max"), p.usize("steps")) {
        out.push(vec![beta.into(), anisotropy_ratio(beta, p.f64("tol"))?.into()]);
    }
    Ok(out)
}

fn capacitor(p: &Params, cache: Option<&Path>) -> Result<Table, CliError> {
    let l = p.usize("L");
    let spec = CapacitorSpec::new(l, p.f64("ej"))?;
    let table = kernel_table(cache, 1.0, l, p.f64("tol"))?;
    let exact = capacitor_energy_exact(&spec, &table)?;
    let coulomb = capacitor_energy_coulomb(&spec);
    let mut out = Table::new(&["L", "energy_exact", "energy_coulomb", "ratio"]);
    out.push(vec![l.into(), exact.into(), coulomb.into(), (coulomb / exact).into()]);
    out.note(format!("charge unit m = {}", format_float(spec.charge_unit())));
    Ok(out)
}

fn ladder(p: &Params, n: usize) -> LadderSpec {
    let mut s = LadderSpec::new(n, p.f64("ejy"), p.f64("beta"), p.f64("ecy"));
    s.v_max = p.usize("v_max");
    s.solver = solver(p);
    s
}

fn band_notes(out: &mut Table, band: &BandCurve) {
    let mins: Vec<String> = band.local_minima().iter().map(|&t| format_float(t)).collect();
    out.note(format!("local minima at theta = [{}]", mins.join(", ")));
    let has = |t: f64| band.is_local_min(t);
    out.note(format!("minima at 0 and pi: {}", has(0.0) && has(PI)));
}

fn landscape(p: &Params, cache: Option<&Path>) -> Result<Table, CliError> {
    let n = p.usize("N");
    let mut spec = ladder(p, n);
    if p.usize("kernel_range") > 0 {
        spec.kernel_range = p.usize("kernel_range");
    }
    let table = kernel_table(cache, spec.beta, n.saturating_sub(1).max(1), p.f64("tol"))?;
    let band = ladder_ground_band(&spec, &theta_grid(p.usize("thetas")), &table)?;
    let mut out = Table::new(&["theta", "energy"]);
    for &(t, e) in band.samples() {
        out.push(vec![t.into(), e.into()]);
    }
    out.note(format!("hilbert dimension {}", spec.dim()?));
    band_notes(&mut out, &band);
    if let (Some(a), Some(b)) = (band.well_asymmetry(), band.barrier()) {
        out.note(format!("well asymmetry {}", format_float(a)));
        out.note(format!("barrier {}", format_float(b)));
    }
    Ok(out)
}

fn length_scan(p: &Params, cache: Option<&Path>, barrier_only: bool) -> Result<Table, CliError> {
    let (lo, hi) = (p.usize("n_min"), p.usize("n_max"));
    let beta = p.f64("beta");
    let table = kernel_table(cache, beta, hi.saturating_sub(1).max(1), p.f64("tol"))?;
    let thetas = theta_grid(p.usize("thetas"));
    if barrier_only {
        let specs: Vec<LadderSpec> = (lo..=hi).map(|n| ladder(p, n)).collect();
        let rows = barrier_scaling(&specs, &thetas, &table)?;
        let mut out = Table::new(&["N", "barrier", "barrier_times_n"]);
        for &(n, b) in &rows {
            out.push(vec![n.into(), b.into(), (b * n as f64).into()]);
        }
        let scaled: Vec<f64> = rows.iter().map(|&(n, b)| b * n as f64).collect();
        let (mn, mx) = scaled.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        out.note(format!("max/min of barrier*N {}", format_float(mx / mn)));
        return Ok(out);
    }
    let mut out = Table::new(&["N", "well_asymmetry", "barrier", "minima_at_0_and_pi"]);
    let mut points = Vec::new();
    for n in lo..=hi {
        let band = ladder_ground_band(&ladder(p, n), &thetas, &table)?;
        let a = band.well_asymmetry().expect("grid holds 0 and pi");
        let b = band.barrier().expect("grid holds 0 and pi");
        out.push(vec![n.into(), a.into(), b.into(), (band.is_local_min(0.0) && band.is_local_min(PI)).into()]);
        points.push((n as f64, a));
    }
    match log_linear_fit(&points) {
        Ok(f) => {
            out.note(format!("log-linear fit slope {}", format_float(f.slope)));
            out.note(format!("log-linear fit intercept {}", format_float(f.intercept)));
            out.note(format!("log-linear fit r_squared {}", format_float(f.r_squared)));
        }
        Err(e) => out.note(format!("log-linear fit unavailable: {e}")),
    }
    Ok(out)
}

fn phase_slip(p: &Params) -> Result<Table, CliError> {
    let (ej, n) = (p.f64("ej"), p.usize("n"));
    let half = PI * p.int("periods") as f64;
    let gammas = linspace(-half, half, p.usize("points"));
    let band = phase_slip_band(ej, p.f64("ec"), n, p.f64("t_slip"), &gammas)?;
    let mut out = Table::new(&["gamma", "band", "e_0", "e_1"]);
    for (&g, &(_, e)) in gammas.iter().zip(band.samples()) {
        out.push(vec![g.into(), e.into(), phase_slip_energy(0, g, ej, n).into(), phase_slip_energy(1, g, ej, n).into()]);
    }
    let d = phase_slip_energy(0, PI, ej, n) - phase_slip_energy(1, PI, ej, n);
    out.note(format!("parabola mismatch at gamma = pi {}", format_float(d)));
    Ok(out)
}

fn sawtooth(p: &Params) -> Result<Table, CliError> {
    let mut q = ChargeQubitParams::new(p.f64("ec"), p.f64("ej"))?;
    q.n_cut = p.usize("n_cut");
    let mut out = Table::new(&["ng", "voltage"]);
    for ng in linspace(p.f64("ng_min"), p.f64("ng_max"), p.usize("points")) {
        out.push(vec![ng.into(), charge_qubit_voltage(&q, ng)?.into()]);
    }
    Ok(out)
}

fn parity(p: &Params) -> Result<Table, CliError> {
    let q = ChargeQubitParams::new(p.f64("ec"), p.f64("ej"))?;
    let mut out = Table::new(&["n", "ng", "voltage", "parity"]);
    for n in p.int("n_min")..=p.int("n_max") {
        let ng = 0.25 + 0.5 * n as f64;
        let parity = match parity_measurement(&q, n)? {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        out.push(vec![n.into(), ng.into(), charge_qubit_voltage(&q, ng)?.into(), parity.into()]);
    }
    Ok(out)
}

fn squid(p: &Params) -> Result<Table, CliError> {
    let mut out = Table::new(&["q", "energy", "current_zero", "current_pi"]);
    for q in linspace(p.f64("q_min"), p.f64("q_max"), p.usize("points")) {
        let s = SquidParams::new(p.f64("ec"), q)?;
        out.push(vec![
            q.into(),
            squid_energy(&s, p.f64("dtheta")).into(),
            ac_interference_current(q, QubitPhase::Zero).into(),
            ac_interference_current(q, QubitPhase::Pi).into(),
        ]);
    }
    Ok(out)
}

fn oscillator_params(p: &Params) -> Result<OscillatorParams, CliError> {
    Ok(OscillatorParams::new(p.usize("M"), p.usize("N"), p.f64("ej"), p.f64("ecr"))?)
}

fn oscillator(p: &Params) -> Result<Table, CliError> {
    let lc = oscillator_lc(&oscillator_params(p)?);
    let mut out = Table::new(&["capacitance", "inductance", "impedance", "frequency", "l_over_c"]);
    out.push(vec![
        lc.capacitance.into(),
        lc.inductance.into(),
        lc.impedance.into(),
        lc.frequency.into(),
        (lc.inductance / lc.capacitance).into(),
    ]);
    Ok(out)
}

fn ring_toy(p: &Params) -> Result<Table, CliError> {
    let (ec, ej, n) = (p.f64("ec"), p.f64("ej"), p.usize("n_ring"));
    let levels = ring_toy_spectrum(ec, ej, n, p.usize("levels"))?;
    let omega = (8.0 * ec * ej / n as f64).sqrt();
    let mut out = Table::new(&["level", "energy", "spacing_over_omega"]);
    for (k, &e) in levels.iter().enumerate() {
        let spacing = if k == 0 { f64::NAN } else { (e - levels[k - 1]) / omega };
        out.push(vec![k.into(), e.into(), spacing.into()]);
    }
    out.note(format!("harmonic spacing sqrt(8 ec ej / n_ring) = {}", format_float(omega)));
    Ok(out)
}

fn gate_sim(p: &Params) -> Result<Table, CliError> {
    let osc = oscillator_params(p)?;
    let coupling = p.f64("coupling");
    let g = GateSpec { coupling, duration: PI / (8.0 * coupling), oscillator: osc, fock_cut: p.usize("fock_cut") };
    let period = TAU / oscillator_lc(&osc).frequency;
    let times = linspace(0.0, p.f64("periods") * period, p.usize("steps") + 1);
    let reports = conditional_oscillator_evolution(&g, &times)?;
    let mut out = Table::new(&["t", "phase", "entropy", "fidelity"]);
    let mut norm_dev: f64 = 0.0;
    let mut leak: f64 = 0.0;
    for r in &reports {
        let fid = r.return_fidelity[0].min(r.return_fidelity[1]);
        out.push(vec![r.t.into(), r.relative_phase.into(), r.entanglement_entropy.into(), fid.into()]);
        norm_dev = r.norm.iter().fold(norm_dev, |m, n| m.max((n - 1.0).abs()));
        leak = leak.max(r.leakage);
    }
    out.note(format!("oscillator period {}", format_float(period)));
    out.note(format!("max norm deviation {}", format_float(norm_dev)));
    out.note(format!("max top-Fock population {}", format_float(leak)));
    let gate = rz_gate(coupling, g.duration)?;
    let err = gate.iter().zip(r_gate(PI / 8.0).iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    out.note(format!("switch held for pi/(8 coupling) vs R(pi/8): max entry error {}", format_float(err)));
    Ok(out)
}

fn xy_oracle(p: &Params, cache: Option<&Path>) -> Result<Table, CliError> {
    let (ejx, ejy) = (p.f64("ejx"), p.f64("ejy"));
    let mut spec = XYLatticeSpec::new(p.usize("width"), p.usize("height"), ejx, ejy);
    spec.relax_tol = p.f64("relax_tol");
    spec.max_iters = p.usize("max_iters");
    let seps = [p.int("sep_a"), p.int("sep_b")];
    let table = kernel_table(cache, ejy / ejx, seps[0].max(seps[1]) as usize, p.f64("tol"))?;
    let along_x = p.text("axis") == "x";
    let mut out = Table::new(&["separation", "xy_energy", "kernel_energy"]);
    let mut e = Vec::new();
    for d in seps {
        let sep = if along_x { (d, 0) } else { (0, d) };
        let xy = xy_relax_pair_energy(&spec, sep)?;
        let k = -2.0 * PI * ejy * table.get(sep.0, sep.1)?;
        out.push(vec![d.into(), xy.into(), k.into()]);
        e.push((xy, k));
    }
    let (dxy, dk) = (e[1].0 - e[0].0, e[1].1 - e[0].1);
    out.note(format!("xy energy difference {}", format_float(dxy)));
    out.note(format!("kernel energy difference {}", format_float(dk)));
    out.note(format!("relative deviation {}", format_float((dxy - dk).abs() / dk.abs())));
    Ok(out)
}

fn regime(p: &Params, cache: Option<&Path>) -> Result<Table, CliError> {
    let (ejy, ejx, ecy, ecx) = (p.f64("ejy"), p.f64("ejx"), p.f64("ecy"), p.f64("ecx"));
    let beta = ejy / ejx;
    let table = kernel_table(cache, beta, 1, 1e-8 * beta.recip().min(1.0))?;
    let r = regime_check(ejy, ejx, ecy, ecx, &table)?;
    let mut out = Table::new(&[
        "beta",
        "superfluid_margin",
        "projection_margin",
        "exciton_coupling",
        "ejy_over_ejx",
        "ecy_over_ecx",
        "ejx_over_ecx",
        "ejy_over_ecy",
    ]);
    out.push(vec![
        r.beta.into(),
        r.superfluid_margin.into(),
        r.projection_margin.into(),
        exciton_coupling(ecy, ejy, beta, &table)?.into(),
        r.ejy_over_ejx.into(),
        r.ecy_over_ecx.into(),
        r.ejx_over_ecx.into(),
        r.ejy_over_ecy.into(),
    ]);
    out.note(format!("both margins exceed 10: {}", r.both_margins_exceed(10.0)));
    Ok(out)
}
