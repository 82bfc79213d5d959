use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;
use vortexion_core::devices::*;
use vortexion_core::kernel::{read_cache, write_cache};
use vortexion_core::spectra::{phase_slip_band, phase_slip_energy};
use vortexion_core::*;

fn table(beta: f64) -> &'static KernelTable {
    static ISO: OnceLock<KernelTable> = OnceLock::new();
    static ANISO: OnceLock<KernelTable> = OnceLock::new();
    let cell = if beta == 1.0 { &ISO } else { &ANISO };
    cell.get_or_init(|| build_kernel_table(beta, 12, 1e-11).unwrap())
}

fn neutral_config() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((0i64..6, 0i64..6, -2i64..=2), 1..6).prop_map(|mut v| {
        let total: i64 = v.iter().map(|s| s.2).sum();
        v.push((6, 6, -total));
        v
    })
}

fn build(sites: &[(i64, i64, i64)], shift: (i64, i64), sign: i64) -> VortexConfiguration {
    let mut c = VortexConfiguration::new(16, 16).unwrap();
    for &(x, y, q) in sites {
        let (x, y) = (x + shift.0, y + shift.1);
        let q = c.charge(x, y) + sign * q;
        c.set(x, y, q).unwrap();
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_negative_and_reflection_exact(dx in -6i64..=6, dy in -6i64..=6, beta in 0.5f64..10.0) {
        prop_assume!(dx != 0 || dy != 0);
        let v = interaction_kernel(dx, dy, beta, 1e-10).unwrap();
        prop_assert!(v < 0.0);
        prop_assert_eq!(v.to_bits(), interaction_kernel(-dx, dy, beta, 1e-10).unwrap().to_bits());
        prop_assert_eq!(v.to_bits(), interaction_kernel(dx, -dy, beta, 1e-10).unwrap().to_bits());
    }

    #[test]
    fn kernel_stable_under_tighter_tolerance(dx in 0i64..=8, dy in 0i64..=8, beta in 0.25f64..50.0) {
        prop_assume!(dx != 0 || dy != 0);
        let a = interaction_kernel(dx, dy, beta, 1e-9).unwrap();
        let b = interaction_kernel(dx, dy, beta, 5e-10).unwrap();
        prop_assert!((a - b).abs() <= 2e-9, "{a} vs {b}");
    }

    #[test]
    fn configuration_energy_symmetries(sites in neutral_config(), sx in 0i64..4, sy in 0i64..4, aniso in any::<bool>()) {
        let t = table(if aniso { 4.0 } else { 1.0 });
        let base = config_energy(&build(&sites, (0, 0), 1), 1.0, t).unwrap();
        let moved = config_energy(&build(&sites, (sx, sy), 1), 1.0, t).unwrap();
        let flipped = config_energy(&build(&sites, (0, 0), -1), 1.0, t).unwrap();
        let scale = 1e-12 * base.abs().max(1.0);
        prop_assert!((base - moved).abs() <= scale);
        prop_assert!((base - flipped).abs() <= scale);
        prop_assert!(base >= -scale);
    }

    #[test]
    fn cache_roundtrip_is_bit_exact(beta in 0.5f64..8.0, range in 1usize..5) {
        let t = build_kernel_table(beta, range, 1e-10).unwrap();
        let back = read_cache(&write_cache(&t)).unwrap();
        for ((a, b, v), (c, d, w)) in t.entries().into_iter().zip(back.entries()) {
            prop_assert_eq!((a, b, v.to_bits()), (c, d, w.to_bits()));
        }
    }

    #[test]
    fn voltage_periodic_and_odd(ng in -2.0f64..2.0, log_ratio in -2.0f64..1.0) {
        let p = ChargeQubitParams::new(1.0, 10f64.powf(log_ratio)).unwrap();
        prop_assume!((ng.rem_euclid(1.0) - 0.5).abs() > 1e-3);
        let v = charge_qubit_voltage(&p, ng).unwrap();
        prop_assert!((v - charge_qubit_voltage(&p, ng + 1.0).unwrap()).abs() < 1e-8);
        prop_assert!((v + charge_qubit_voltage(&p, -ng).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn voltage_matches_finite_difference(ng in -1.0f64..1.0, log_ratio in -2.0f64..1.0) {
        let p = ChargeQubitParams::new(1.0, 10f64.powf(log_ratio)).unwrap();
        prop_assume!((ng.rem_euclid(1.0) - 0.5).abs() > 1e-3);
        let h = 1e-5;
        let fd = (charge_qubit_ground_energy(&p, ng + h).unwrap()
            - charge_qubit_ground_energy(&p, ng - h).unwrap())
            / (2.0 * h);
        prop_assert!((charge_qubit_voltage(&p, ng).unwrap() - fd).abs() < 1e-6);
    }

    #[test]
    fn squid_factorizes(q in -3.0f64..3.0, dtheta in -7.0f64..7.0, ec in 0.1f64..10.0) {
        prop_assume!(cos_pi(q).abs() > 1e-6);
        let p = SquidParams::new(ec, q).unwrap();
        let ratio = squid_energy(&p, dtheta) / squid_energy(&p, 0.0);
        prop_assert!((ratio - dtheta.cos()).abs() < 1e-12);
    }

    #[test]
    fn oscillator_identities(m in 1usize..5000, n in 1usize..200, ej in 0.01f64..100.0, ecr in 0.01f64..100.0) {
        let lc = oscillator_lc(&OscillatorParams::new(m, n, ej, ecr).unwrap());
        prop_assert!((lc.frequency * lc.impedance * lc.capacitance - 1.0).abs() < 1e-14);
        let (mf, nf) = (m as f64, n as f64);
        let want = 2.0 * PI * PI * mf * ej / (nf * (nf + 1.0) * ecr);
        prop_assert!((lc.inductance / lc.capacitance / want - 1.0).abs() < 4.0 * f64::EPSILON);
    }

    #[test]
    fn gates_compose(a in -4.0f64..4.0, b in -4.0f64..4.0) {
        let ab = r_gate(a) * r_gate(b);
        let want = r_gate(a + b);
        for (x, y) in ab.iter().zip(want.iter()) {
            prop_assert!((x - y).norm() < 1e-14);
        }
        let twisted = want * Complex64::from_polar(1.0, a * b);
        prop_assert!(equal_up_to_phase(&twisted, &ab, 1e-13));
    }

    #[test]
    fn phase_slip_band_is_periodic(gamma in -10.0f64..10.0, frac in 0.0f64..0.3, n in 1usize..6) {
        let a = phase_slip_band(1.0, 1.0, n, frac, &[gamma]).unwrap();
        let b = phase_slip_band(1.0, 1.0, n, frac, &[gamma + TAU]).unwrap();
        prop_assert!((a.energies()[0] - b.energies()[0]).abs() < 1e-9);
        let shifted = phase_slip_energy(1, gamma + TAU, 1.0, n) - phase_slip_energy(0, gamma, 1.0, n);
        prop_assert!(shifted.abs() < 1e-12 * (1.0 + gamma * gamma));
    }
}

#[test]
fn anisotropy_ratio_increases() {
    let betas = [1.0, 1.5, 2.0, 4.0, 8.0, 16.0];
    let r: Vec<f64> = betas.iter().map(|&b| anisotropy_ratio(b, 1e-10).unwrap()).collect();
    assert!((r[0] - 1.0).abs() < 1e-8);
    assert!(r.windows(2).all(|w| w[1] > w[0]), "{r:?}");
}

#[test]
fn pair_energy_grows_with_distance() {
    let t = table(4.0);
    for axis in [(1, 0), (0, 1), (1, 1)] {
        let energies: Vec<f64> = (1..=5)
            .map(|d| {
                let c = build(&[(0, 0, 1), (d * axis.0, d * axis.1, -1)], (2, 2), 1);
                let e = config_energy(&c, 1.0, t).unwrap();
                let k = t.get(d * axis.0, d * axis.1).unwrap();
                assert!((e + 2.0 * PI * k).abs() < 1e-12 * e);
                e
            })
            .collect();
        assert!(energies.windows(2).all(|w| w[1] > w[0]), "{axis:?}: {energies:?}");
    }
    let h = dipole_energy(Orientation::Horizontal, 1.0, 4.0).unwrap();
    assert!((h + 2.0 * PI * t.get(1, 0).unwrap()).abs() < 1e-9);
}

#[test]
fn capacitor_ratio_falls_toward_one() {
    let t = build_kernel_table(1.0, 40, 1e-10).unwrap();
    let r: Vec<f64> = [5, 10, 20, 40].iter().map(|&l| capacitor_ratio(l, &t).unwrap()).collect();
    assert!(r.windows(2).all(|w| w[1] < w[0]), "{r:?}");
    assert!(r.iter().all(|&x| x > 1.0), "{r:?}");
}

#[test]
fn parity_readout_over_range() {
    let p = ChargeQubitParams::new(1.0, 0.01).unwrap();
    for n in -8i64..=8 {
        let want = if n.rem_euclid(2) == 0 { Parity::Even } else { Parity::Odd };
        assert_eq!(parity_measurement(&p, n).unwrap(), want, "n = {n}");
    }
}

#[test]
fn voltage_periodic_on_grid() {
    let p = ChargeQubitParams::new(1.0, 0.1).unwrap();
    for k in 0..=100 {
        let ng = -0.5 + k as f64 / 100.0 + 0.003;
        let v = charge_qubit_voltage(&p, ng).unwrap();
        assert!((v - charge_qubit_voltage(&p, ng + 1.0).unwrap()).abs() < 1e-8);
    }
}
