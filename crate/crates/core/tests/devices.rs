use std::f64::consts::PI;

use vortexion_core::devices::*;

fn spec(m: usize) -> GateSpec {
    GateSpec {
        coupling: 1.0,
        duration: 0.0,
        oscillator: OscillatorParams::new(m, 10, 1.0, 1.0).unwrap(),
        fock_cut: 64,
    }
}

#[test]
fn shifted_branch_follows_classical_trajectory() {
    let g = spec(100);
    let omega = oscillator_lc(&g.oscillator).frequency;
    let period = 2.0 * PI / omega;
    let times: Vec<f64> = (0..=40).map(|k| k as f64 * period / 40.0).collect();
    let reports = conditional_oscillator_evolution(&g, &times).unwrap();
    for r in &reports {
        let want = PI * (1.0 - (omega * r.t).cos());
        assert!((r.mean_phase[1] - want).abs() < 1e-6, "t = {}: {} vs {want}", r.t, r.mean_phase[1]);
        assert!(r.mean_phase[0].abs() < 1e-12);
        assert!((r.return_fidelity[0] - 1.0).abs() < 1e-10);
        for n in r.norm {
            assert!((n - 1.0).abs() < 1e-10);
        }
    }
    let last = reports.last().unwrap();
    assert!(last.return_fidelity[1] > 1.0 - 1e-6);
    assert!(last.entanglement_entropy < 1e-6);
    let half = &reports[20];
    assert!(half.return_fidelity[1] < 0.1);
    assert!(half.entanglement_entropy > 0.5);
}

#[test]
fn coherent_overlap_at_half_period() {
    // at half period the shifted branch is a coherent state displaced by 2π in γ
    let g = spec(100);
    let lc = oscillator_lc(&g.oscillator);
    let r = &conditional_oscillator_evolution(&g, &[PI / lc.frequency]).unwrap()[0];
    let zpf2 = 0.5 * lc.impedance;
    let alpha2 = (2.0 * PI).powi(2) / (4.0 * zpf2);
    assert!((r.return_fidelity[1] - (-alpha2).exp()).abs() < 1e-9);
}

#[test]
fn pi_over_eight_gate() {
    for coupling in [0.3, 1.0, 7.0] {
        let g = rz_gate(coupling, PI / (8.0 * coupling)).unwrap();
        let want = r_gate(PI / 8.0);
        assert!(g.iter().zip(want.iter()).all(|(a, b)| (a - b).norm() < 1e-15));
    }
    let sq = r_gate(PI / 8.0) * r_gate(PI / 8.0);
    assert!(equal_up_to_phase(&sq, &r_gate(PI / 4.0), 1e-15));
}

#[test]
fn ring_spacing_harmonic_limit() {
    let (ec, ej, n) = (1.0, 1e4, 8);
    let l = ring_toy_spectrum(ec, ej, n, 4).unwrap();
    let omega = (8.0 * ec * ej / n as f64).sqrt();
    for w in l.windows(2) {
        assert!(((w[1] - w[0]) / omega - 1.0).abs() < 0.01);
    }
    let l4 = ring_toy_spectrum(4.0 * ec, ej, n, 4).unwrap();
    assert!(((l4[1] - l4[0]) / (l[1] - l[0]) - 2.0).abs() < 0.02);
}

#[test]
fn impedance_grows_as_root_of_track_length() {
    let z: Vec<f64> = [10, 100, 1000].iter().map(|&m| oscillator_lc(&spec(m).oscillator).impedance).collect();
    for w in z.windows(2) {
        assert!((w[1] / w[0] / 10f64.sqrt() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn squid_switches_off_at_half_charge() {
    for dtheta in [0.0, 0.4, PI] {
        assert!(squid_energy(&SquidParams::new(3.0, 0.5).unwrap(), dtheta).abs() < 1e-12);
    }
    assert_ne!(ac_interference_current(0.2, QubitPhase::Zero), ac_interference_current(0.2, QubitPhase::Pi));
}
