use std::f64::consts::TAU;

use crate::error::{finite, positive, Error, Result};
use crate::linalg::tridiagonal_eigenvalues;

use super::BandCurve;

/// Energy of a chain after `m` phase slips: `E_J (γ − 2πm)² / 2N`.
pub fn phase_slip_energy(m: i64, gamma: f64, ej: f64, n: usize) -> f64 {
    let d = gamma - TAU * m as f64;
    ej * d * d / (2.0 * n as f64)
}

const TRUNCATION_TOL: f64 = 1e-10;
const MAX_HALF_WIDTH: i64 = 64;

fn lowest_in_window(gamma: f64, ej: f64, n: usize, t_slip: f64, centre: i64, half: i64) -> f64 {
    let diag: Vec<f64> = (centre - half..=centre + half).map(|m| phase_slip_energy(m, gamma, ej, n)).collect();
    let off = vec![-t_slip; diag.len() - 1];
    tridiagonal_eigenvalues(&diag, &off)[0]
}

/// Lowest tight-binding band over the slip index at each `γ`.
///
/// `ec` sets the slip amplitude physically but enters here only through the
/// supplied `t_slip`.
pub fn phase_slip_band(ej: f64, ec: f64, n: usize, t_slip: f64, gammas: &[f64]) -> Result<BandCurve> {
    positive("ej", ej)?;
    positive("ec", ec)?;
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if !(t_slip >= 0.0 && t_slip < ej) {
        return Err(Error::Domain(format!("t_slip must lie in [0, ej), got {t_slip}")));
    }
    let mut samples = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        finite("gamma", gamma)?;
        let centre = (gamma / TAU).round() as i64;
        let mut half = 2;
        let mut e = lowest_in_window(gamma, ej, n, t_slip, centre, half);
        loop {
            if half >= MAX_HALF_WIDTH {
                return Err(Error::Resolution(format!("slip window did not converge at gamma = {gamma}")));
            }
            half += 2;
            let next = lowest_in_window(gamma, ej, n, t_slip, centre, half);
            let change = (next - e).abs();
            e = next;
            if change < TRUNCATION_TOL {
                break;
            }
        }
        samples.push((gamma, e));
    }
    Ok(BandCurve::new(samples))
}
