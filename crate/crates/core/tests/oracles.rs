//! Independent reference computations checked against the library.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use vortexion_core::coulombgas::{capacitor_energy_exact, capacitor_ratio, CapacitorSpec};
use vortexion_core::kernel::{anisotropy_ratio, build_kernel_table, interaction_kernel};
use vortexion_core::spectra::{chain_ground_band, theta_grid, ChainSpec};

/// Fixed-grid trapezoid rule for `I'` with the textbook `acosh` form.
fn trapezoid_kernel(dx: i64, dy: i64, beta: f64, points: usize) -> f64 {
    let (dx, dy) = (dx.abs() as f64, dy.abs() as f64);
    let f = |q: f64| {
        if q == 0.0 {
            return -dx;
        }
        let a = 1.0 + beta * (1.0 - q.cos());
        let s = a.acosh();
        ((-dx * s).exp() * (dy * q).cos() - 1.0) / (a * a - 1.0).sqrt()
    };
    let h = PI / points as f64;
    let mut sum = 0.5 * (f(0.0) + f(PI));
    for k in 1..points {
        sum += f(k as f64 * h);
    }
    sum * h
}

#[test]
fn kernel_matches_trapezoid_oracle() {
    let v = interaction_kernel(3, 0, 1.0, 1e-10).unwrap();
    let oracle = trapezoid_kernel(3, 0, 1.0, 1_000_000);
    assert!((v - oracle).abs() < 1e-8, "{v} vs {oracle}");
}

#[test]
fn ratio_matches_trapezoid_oracle_at_beta_four() {
    let r = anisotropy_ratio(4.0, 1e-10).unwrap();
    let oracle = trapezoid_kernel(1, 0, 4.0, 1_000_000) / trapezoid_kernel(0, 1, 4.0, 1_000_000);
    assert!((r - oracle).abs() < 1e-6, "{r} vs {oracle}");
    assert!(r > 1.0);
}

#[test]
fn isotropic_kernel_grows_logarithmically() {
    let t = build_kernel_table(1.0, 20, 1e-10).unwrap();
    let step = |r: i64| t.get(2 * r, 0).unwrap().abs() - t.get(r, 0).unwrap().abs();
    let devs: Vec<f64> = (2..=10).map(|r| (step(r) - LN_2).abs()).collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
    assert!(devs[devs.len() - 1] < 2e-3, "{devs:?}");
    let oracle = trapezoid_kernel(20, 0, 1.0, 1_000_000) - trapezoid_kernel(10, 0, 1.0, 1_000_000);
    assert!((-oracle - step(10)).abs() < 1e-7);
}

#[test]
fn capacitor_matches_direct_pair_sum() {
    let l = 2usize;
    let n = l as i64 + 1;
    let mut charges = Vec::new();
    for x in 0..n {
        charges.push((x, 0, 1.0));
        charges.push((x, 1, -1.0));
    }
    let mut direct = 0.0;
    for (i, a) in charges.iter().enumerate() {
        for b in &charges[i + 1..] {
            direct += a.2 * b.2 * interaction_kernel(a.0 - b.0, a.1 - b.1, 1.0, 1e-10).unwrap();
        }
    }
    direct *= PI;
    let table = build_kernel_table(1.0, 3, 1e-10).unwrap();
    let exact = capacitor_energy_exact(&CapacitorSpec::new(l, 1.0).unwrap(), &table).unwrap();
    assert!((exact - direct).abs() < 1e-12, "{exact} vs {direct}");
    let ratio = capacitor_ratio(l, &table).unwrap();
    assert!((ratio - PI * PI * 9.0 / 2.0 / direct).abs() < 1e-12);
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix.
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut v: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn two_site_chain_matches_hand_built_matrix() {
    let (u, hop) = (0.8, 0.35);
    let spec = ChainSpec::new(2, hop, u);
    let thetas = theta_grid(7);
    let band = chain_ground_band(&spec, &thetas).unwrap();
    for &theta in &thetas {
        // states (n1, n2), n1 fastest
        let states: Vec<(i64, i64)> = (0..9).map(|i| (i % 3 - 1, i / 3 - 1)).collect();
        let idx = |n1: i64, n2: i64| states.iter().position(|&s| s == (n1, n2));
        let mut h = vec![vec![Complex64::new(0.0, 0.0); 9]; 9];
        for (i, &(n1, n2)) in states.iter().enumerate() {
            h[i][i] += u * (n1 * n1 + n2 * n2) as f64;
            if let Some(j) = idx(n1 + 1, n2 - 1) {
                h[j][i] += -hop / 2.0;
                h[i][j] += -hop / 2.0;
            }
            if let Some(j) = idx(n1 + 1, n2) {
                h[j][i] += -hop / 2.0;
                h[i][j] += -hop / 2.0;
            }
            if let Some(j) = idx(n1, n2 + 1) {
                let v = -hop / 2.0 * Complex64::from_polar(1.0, -theta);
                h[j][i] += v;
                h[i][j] += v.conj();
            }
        }
        let mut real = vec![vec![0.0; 18]; 18];
        for i in 0..9 {
            for j in 0..9 {
                real[i][j] = h[i][j].re;
                real[i + 9][j + 9] = h[i][j].re;
                real[i][j + 9] = -h[i][j].im;
                real[i + 9][j] = h[i][j].im;
            }
        }
        let oracle = jacobi_eigenvalues(real)[0];
        let e = band.energy_at(theta).unwrap();
        assert!((e - oracle).abs() < 1e-12, "theta {theta}: {e} vs {oracle}");
    }
}

#[test]
fn insulating_chain_band_follows_perturbative_order() {
    for n in [2usize, 3] {
        let hops = [0.01, 0.02, 0.04];
        let pts: Vec<(f64, f64)> = hops
            .iter()
            .map(|&hop| {
                let band = chain_ground_band(&ChainSpec::new(n, hop, 1.0), &[0.0, PI]).unwrap();
                (hop.ln(), band.amplitude().ln())
            })
            .collect();
        let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);
        assert!((slope - (n as f64 + 1.0)).abs() < 0.05, "N={n}: slope {slope}");
    }
}
