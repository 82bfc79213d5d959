use std::f64::consts::TAU;

use nalgebra::DMatrix;

use crate::error::{positive, Error, Result};
use crate::linalg::symmetric_eigen;

use super::BandCurve;

/// Low spectrum of `−(1/2M) d²/dΘ² + F(Θ)` on the ring.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleWell {
    pub levels: Vec<f64>,
    pub splitting: f64,
    pub grid: Vec<f64>,
    /// `|ψ₀|²` and `|ψ₁|²` on the grid, each summing to 1.
    pub densities: [Vec<f64>; 2],
}

const LEVELS: usize = 8;
const RESOLUTION_TOL: f64 = 0.01;

/// Periodic Catmull-Rom interpolant through band samples covering `[0, 2π)`.
fn interpolant(band: &BandCurve) -> Result<impl Fn(f64) -> f64 + '_> {
    let s = band.samples();
    if s.len() < 4 || s.iter().any(|p| !(0.0..TAU).contains(&p.0)) {
        return Err(Error::Domain("band must have at least 4 samples in [0, 2pi)".into()));
    }
    Ok(move |theta: f64| {
        let n = s.len();
        let t = theta.rem_euclid(TAU);
        let i1 = s.iter().rposition(|p| p.0 <= t).unwrap_or(n - 1);
        let i2 = (i1 + 1) % n;
        let (i0, i3) = ((i1 + n - 1) % n, (i2 + 1) % n);
        let gap = |a: usize, b: usize| (s[b].0 - s[a].0).rem_euclid(TAU);
        let h = gap(i1, i2);
        let u = if h > 0.0 { (t - s[i1].0).rem_euclid(TAU) / h } else { 0.0 };
        let m1 = (s[i2].1 - s[i0].1) / (gap(i0, i1) + h) * h;
        let m2 = (s[i3].1 - s[i1].1) / (h + gap(i2, i3)) * h;
        let (u2, u3) = (u * u, u * u * u);
        (2.0 * u3 - 3.0 * u2 + 1.0) * s[i1].1
            + (u3 - 2.0 * u2 + u) * m1
            + (-2.0 * u3 + 3.0 * u2) * s[i2].1
            + (u3 - u2) * m2
    })
}

fn solve(f: &dyn Fn(f64) -> f64, mass: f64, points: usize) -> DoubleWell {
    let h = TAU / points as f64;
    let kin = 1.0 / (2.0 * mass * h * h);
    let grid: Vec<f64> = (0..points).map(|k| k as f64 * h).collect();
    let mut m = DMatrix::zeros(points, points);
    for k in 0..points {
        m[(k, k)] = 2.0 * kin + f(grid[k]);
        let next = (k + 1) % points;
        m[(k, next)] -= kin;
        m[(next, k)] -= kin;
    }
    let (vals, vecs) = symmetric_eigen(m);
    let density = |c: usize| (0..points).map(|k| vecs[(k, c)] * vecs[(k, c)]).collect::<Vec<f64>>();
    DoubleWell {
        splitting: vals[1] - vals[0],
        levels: vals.into_iter().take(LEVELS).collect(),
        densities: [density(0), density(1)],
        grid,
    }
}

/// Diagonalizes the phase Hamiltonian on `grid_points` and checks the
/// splitting against a grid of twice the size.
pub fn double_well_spectrum(band: &BandCurve, mass: f64, grid_points: usize) -> Result<DoubleWell> {
    positive("mass", mass)?;
    if grid_points < 64 {
        return Err(Error::Domain(format!("grid_points must be at least 64, got {grid_points}")));
    }
    let f = interpolant(band)?;
    let coarse = solve(&f, mass, grid_points);
    let fine = solve(&f, mass, 2 * grid_points);
    let change = (fine.splitting - coarse.splitting).abs();
    if change > RESOLUTION_TOL * coarse.splitting.abs() {
        return Err(Error::Resolution(format!(
            "splitting changed by {change:.3e} when doubling {grid_points} grid points"
        )));
    }
    Ok(coarse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::theta_grid;

    #[test]
    fn interpolant_reproduces_samples() {
        let band = BandCurve::new(theta_grid(12).into_iter().map(|t| (t, t.sin())).collect());
        let f = interpolant(&band).unwrap();
        for (t, e) in band.samples() {
            assert!((f(*t) - e).abs() < 1e-14);
        }
        assert!((f(0.3) - 0.3f64.sin()).abs() < 5e-3);
    }

    #[test]
    fn rejects_coarse_inputs() {
        let band = BandCurve::new(theta_grid(12).into_iter().map(|t| (t, 0.0)).collect());
        assert!(double_well_spectrum(&band, 1.0, 32).is_err());
        let sparse = BandCurve::new(vec![(0.0, 0.0), (1.0, 0.0)]);
        assert!(double_well_spectrum(&sparse, 1.0, 64).is_err());
    }
}
