use std::f64::consts::{PI, TAU};

/// Angles closer than this (mod 2π) are treated as the same sample point.
const ANGLE_EPS: f64 = 1e-9;

fn same_angle(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(TAU);
    d < ANGLE_EPS || TAU - d < ANGLE_EPS
}

/// Lowest eigenvalue sampled over a boundary twist, with the diagnostics the
/// qubit landscape is judged by.
#[derive(Debug, Clone, PartialEq)]
pub struct BandCurve {
    samples: Vec<(f64, f64)>,
    periodicity_defect: Option<f64>,
    well_asymmetry: Option<f64>,
    barrier: Option<f64>,
}

impl BandCurve {
    /// Sorts samples by angle and evaluates the diagnostics that the sample
    /// set supports; missing partners leave a diagnostic at `None`.
    pub fn new(mut samples: Vec<(f64, f64)>) -> Self {
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        let find = |t: f64| samples.iter().find(|s| same_angle(s.0, t)).map(|s| s.1);
        let mut defect: Option<f64> = None;
        for &(t, e) in &samples {
            if let Some(f) = find(t + PI) {
                defect = Some(defect.unwrap_or(0.0).max((e - f).abs()));
            }
        }
        let (e0, epi) = (find(0.0), find(PI));
        let well_asymmetry = e0.zip(epi).map(|(a, b)| (a - b).abs());
        let barrier = e0.zip(epi).map(|(a, b)| {
            let top = samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
            top - a.max(b)
        });
        Self { samples, periodicity_defect: defect, well_asymmetry, barrier }
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.0).collect()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.1).collect()
    }

    /// `max |E(Θ) − E(Θ+π)|` over sampled pairs.
    pub fn periodicity_defect(&self) -> Option<f64> {
        self.periodicity_defect
    }

    /// `|E(0) − E(π)|`, the error term separating the two wells.
    pub fn well_asymmetry(&self) -> Option<f64> {
        self.well_asymmetry
    }

    /// `max E − max(E(0), E(π))`.
    pub fn barrier(&self) -> Option<f64> {
        self.barrier
    }

    pub fn energy_at(&self, theta: f64) -> Option<f64> {
        self.samples.iter().find(|s| same_angle(s.0, theta)).map(|s| s.1)
    }

    /// Whether the sample at `theta` lies strictly below both cyclic
    /// neighbours.
    pub fn is_local_min(&self, theta: f64) -> bool {
        let n = self.samples.len();
        if n < 3 {
            return false;
        }
        match self.samples.iter().position(|s| same_angle(s.0, theta)) {
            Some(i) => {
                let e = self.samples[i].1;
                e < self.samples[(i + n - 1) % n].1 && e < self.samples[(i + 1) % n].1
            }
            None => false,
        }
    }

    /// Angles of all strict cyclic local minima.
    pub fn local_minima(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.0).filter(|&t| self.is_local_min(t)).collect()
    }

    /// Copy with `E(0)` subtracted (or the first sample if 0 is absent).
    pub fn centered(&self) -> Vec<(f64, f64)> {
        let base = self.energy_at(0.0).or(self.samples.first().map(|s| s.1)).unwrap_or(0.0);
        self.samples.iter().map(|&(t, e)| (t, e - base)).collect()
    }

    pub fn amplitude(&self) -> f64 {
        let e = self.energies();
        e.iter().copied().fold(f64::NEG_INFINITY, f64::max) - e.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `n` equally spaced angles covering `[0, 2π)`.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_of_a_two_well_curve() {
        let grid = theta_grid(8);
        let band = BandCurve::new(grid.iter().map(|&t| (t, -(2.0 * t).cos() + 0.1 * t.cos())).collect());
        assert!((band.well_asymmetry().unwrap() - 0.2).abs() < 1e-12);
        assert!((band.periodicity_defect().unwrap() - 0.2).abs() < 1e-12);
        assert!((band.barrier().unwrap() - 1.9).abs() < 1e-12);
        assert_eq!(band.local_minima().len(), 2);
        assert!(band.is_local_min(0.0) && band.is_local_min(PI));
    }

    #[test]
    fn missing_partners_leave_diagnostics_empty() {
        let band = BandCurve::new(vec![(0.3, 1.0), (0.1, 2.0)]);
        assert_eq!(band.thetas(), vec![0.1, 0.3]);
        assert!(band.well_asymmetry().is_none() && band.periodicity_defect().is_none());
    }

    #[test]
    fn angles_match_modulo_two_pi() {
        let band = BandCurve::new(vec![(TAU, 1.0), (PI, 3.0)]);
        assert_eq!(band.energy_at(0.0), Some(1.0));
        assert_eq!(band.well_asymmetry(), Some(2.0));
    }
}
