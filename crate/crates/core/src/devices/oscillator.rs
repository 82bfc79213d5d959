use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{positive, Error, Result};

/// Vortex oscillator: `M` junctions per track, capacitor of `N` rungs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub m_tracks: usize,
    pub n_rungs: usize,
    pub ej: f64,
    pub ecr: f64,
}

impl OscillatorParams {
    pub fn new(m_tracks: usize, n_rungs: usize, ej: f64, ecr: f64) -> Result<Self> {
        if m_tracks == 0 || n_rungs == 0 {
            return Err(Error::Domain("m_tracks and n_rungs must be at least 1".into()));
        }
        positive("ej", ej)?;
        positive("ecr", ecr)?;
        Ok(Self { m_tracks, n_rungs, ej, ecr })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorLc {
    pub capacitance: f64,
    pub inductance: f64,
    pub impedance: f64,
    pub frequency: f64,
}

/// `C = N / (2π² E_J)` and `L = M / ((N + 1) E_C^r)`.
pub fn oscillator_lc(p: &OscillatorParams) -> OscillatorLc {
    let n = p.n_rungs as f64;
    let capacitance = n / (2.0 * PI * PI * p.ej);
    let inductance = p.m_tracks as f64 / ((n + 1.0) * p.ecr);
    OscillatorLc {
        capacitance,
        inductance,
        impedance: (inductance / capacitance).sqrt(),
        frequency: (inductance * capacitance).sqrt().recip(),
    }
}

fn ring_levels(ec: f64, stiffness: f64, points: usize, half_width: f64, count: usize) -> Vec<f64> {
    let h = 2.0 * half_width / (points + 1) as f64;
    // fourth-order stencil for −4E_C d²/dθ²
    let c = 4.0 * ec / (12.0 * h * h);
    let m = DMatrix::from_fn(points, points, |i, j| {
        let x = -half_width + (i + 1) as f64 * h;
        match i.abs_diff(j) {
            0 => 30.0 * c + 0.5 * stiffness * x * x,
            1 => -16.0 * c,
            2 => c,
            _ => 0.0,
        }
    });
    let mut v: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v.truncate(count);
    v
}

/// Lowest `levels` of `4E_C n'² + (E_J / 2N_ring) θ'²` on a phase grid.
pub fn ring_toy_spectrum(ec: f64, ej: f64, n_ring: usize, levels: usize) -> Result<Vec<f64>> {
    positive("ec", ec)?;
    positive("ej", ej)?;
    if n_ring == 0 || levels == 0 {
        return Err(Error::Domain("n_ring and levels must be at least 1".into()));
    }
    let stiffness = ej / n_ring as f64;
    let omega = (8.0 * ec * ej / n_ring as f64).sqrt();
    // classical turning point of the highest requested level plus eight
    // ground-state widths
    let turning = (2.0 * (levels as f64 + 0.5) * omega / stiffness).sqrt();
    let half_width = turning + 8.0 * (4.0 * ec / omega).sqrt();
    let mut points = 128;
    let mut prev = ring_levels(ec, stiffness, points, half_width, levels);
    while points < 2048 {
        points *= 2;
        let next = ring_levels(ec, stiffness, points, half_width, levels);
        let change = prev.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if change < 1e-7 * omega {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Resolution("ring spectrum did not converge on 2048 grid points".into()))
}
