use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::error::{positive, Error, Result};
use crate::linalg::symmetric_eigen;

use super::oscillator::{oscillator_lc, OscillatorParams};

pub type Gate = Matrix2<Complex64>;

/// `R(θ) = exp(iθZ)`.
pub fn r_gate(theta: f64) -> Gate {
    Matrix2::new(
        Complex64::from_polar(1.0, theta),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::from_polar(1.0, -theta),
    )
}

/// Evolution under the switch term `−E_C Z` for `duration`.
pub fn rz_gate(coupling: f64, duration: f64) -> Result<Gate> {
    positive("coupling", coupling)?;
    if !(duration >= 0.0 && duration.is_finite()) {
        return Err(Error::Domain(format!("duration must be non-negative, got {duration}")));
    }
    Ok(r_gate(coupling * duration))
}

/// Whether `a = e^{iφ} b` for some φ, entrywise within `tol`.
pub fn equal_up_to_phase(a: &Gate, b: &Gate, tol: f64) -> bool {
    let (i, j) = (0..4)
        .map(|k| (k / 2, k % 2))
        .max_by(|&p, &q| b[p].norm().total_cmp(&b[q].norm()))
        .unwrap();
    if b[(i, j)].norm() == 0.0 {
        return a.iter().all(|x| x.norm() <= tol);
    }
    let phase = a[(i, j)] / b[(i, j)];
    let phase = phase / phase.norm();
    a.iter().zip(b.iter()).all(|(x, y)| (x - phase * y).norm() <= tol)
}

/// Qubit-conditioned oscillator run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSpec {
    pub coupling: f64,
    pub duration: f64,
    pub oscillator: OscillatorParams,
    pub fock_cut: usize,
}

/// State of `|+⟩ ⊗ |vac⟩` after evolving under `H_θ = q²/2C + (γ − θ)²/2L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchReport {
    pub t: f64,
    /// `arg ⟨ψ₀|ψ_π⟩`.
    pub relative_phase: f64,
    /// Von Neumann entropy (nats) of the reduced qubit state.
    pub entanglement_entropy: f64,
    /// `|⟨vac|ψ_θ(t)⟩|²` for `θ = 0` and `θ = π`.
    pub return_fidelity: [f64; 2],
    /// `⟨ψ_θ|ψ_θ⟩` for both branches.
    pub norm: [f64; 2],
    /// `⟨γ⟩` for both branches.
    pub mean_phase: [f64; 2],
    /// Population of the top Fock state, maximum over branches.
    pub leakage: f64,
}

const LEAKAGE_TOL: f64 = 1e-8;
const CUTOFF_TOL: f64 = 1e-8;

struct Branch {
    energies: Vec<f64>,
    vectors: DMatrix<f64>,
}

fn branch(theta: f64, c: f64, l: f64, cut: usize) -> Branch {
    let omega = (l * c).sqrt().recip();
    let zpf = (0.5 * (l / c).sqrt()).sqrt();
    let h = DMatrix::from_fn(cut, cut, |i, j| {
        if i == j {
            omega * (i as f64 + 0.5) + theta * theta / (2.0 * l)
        } else if i.abs_diff(j) == 1 {
            -theta / l * zpf * (i.max(j) as f64).sqrt()
        } else {
            0.0
        }
    });
    let (energies, vectors) = symmetric_eigen(h);
    Branch { energies, vectors }
}

impl Branch {
    fn evolve_vacuum(&self, t: f64) -> Vec<Complex64> {
        let n = self.energies.len();
        let mut psi = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let amp = Complex64::from_polar(self.vectors[(0, k)], -self.energies[k] * t);
            for (i, p) in psi.iter_mut().enumerate() {
                *p += amp * self.vectors[(i, k)];
            }
        }
        psi
    }
}

fn mean_gamma(psi: &[Complex64], zpf: f64) -> f64 {
    2.0 * zpf * (1..psi.len()).map(|i| (psi[i - 1].conj() * psi[i]).re * (i as f64).sqrt()).sum::<f64>()
}

fn report(t: f64, b0: &Branch, b1: &Branch, zpf: f64) -> BranchReport {
    let p0 = b0.evolve_vacuum(t);
    let p1 = b1.evolve_vacuum(t);
    let overlap: Complex64 = p0.iter().zip(&p1).map(|(a, b)| a.conj() * b).sum();
    let r = overlap.norm().min(1.0);
    let entropy = [(1.0 + r) / 2.0, (1.0 - r) / 2.0]
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    let norm = |p: &[Complex64]| p.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let top = |p: &[Complex64]| p.last().map(|x| x.norm_sqr()).unwrap_or(0.0);
    BranchReport {
        t,
        relative_phase: if r > 0.0 { overlap.arg() } else { 0.0 },
        entanglement_entropy: entropy,
        return_fidelity: [p0[0].norm_sqr(), p1[0].norm_sqr()],
        norm: [norm(&p0), norm(&p1)],
        mean_phase: [mean_gamma(&p0, zpf), mean_gamma(&p1, zpf)],
        leakage: top(&p0).max(top(&p1)),
    }
}

/// Evolves `|+⟩ ⊗ |vac⟩` with qubit states `|0⟩, |1⟩` shifting the
/// oscillator well to `γ = 0, π`, and reports each time in `times`.
pub fn conditional_oscillator_evolution(g: &GateSpec, times: &[f64]) -> Result<Vec<BranchReport>> {
    if g.fock_cut < 2 {
        return Err(Error::Domain("fock_cut must be at least 2".into()));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("times must be finite".into()));
    }
    let lc = oscillator_lc(&g.oscillator);
    let (c, l) = (lc.capacitance, lc.inductance);
    let zpf = (0.5 * lc.impedance).sqrt();
    let b0 = branch(0.0, c, l, g.fock_cut);
    let b1 = branch(std::f64::consts::PI, c, l, g.fock_cut);
    let out: Vec<BranchReport> = times.iter().map(|&t| report(t, &b0, &b1, zpf)).collect();
    if let Some(worst) = out.iter().map(|r| r.leakage).reduce(f64::max) {
        if worst > LEAKAGE_TOL {
            return Err(Error::Resolution(format!(
                "Fock cutoff {} leaks population {worst:.3e}",
                g.fock_cut
            )));
        }
    }
    if let Some(&t_max) = times.iter().max_by(|a, b| a.abs().total_cmp(&b.abs())) {
        let cut = g.fock_cut + g.fock_cut / 2;
        let r = report(t_max, &branch(0.0, c, l, cut), &branch(std::f64::consts::PI, c, l, cut), zpf);
        let coarse = report(t_max, &b0, &b1, zpf);
        let d = (r.relative_phase - coarse.relative_phase).abs();
        let d = d.min(2.0 * std::f64::consts::PI - d);
        if d > CUTOFF_TOL {
            return Err(Error::Resolution(format!(
                "relative phase moved {d:.3e} when raising the Fock cutoff"
            )));
        }
    }
    Ok(out)
}
