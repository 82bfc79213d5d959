use nalgebra::DMatrix;

use crate::error::{finite, positive, Error, Result};
use crate::linalg::symmetric_eigen;

/// Cooper-pair box `H = 4E_C(N − n_g)² − E_J cos φ` in the charge basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeQubitParams {
    pub ec: f64,
    pub ej: f64,
    /// Charge states kept on each side of the one nearest `n_g`.
    pub n_cut: usize,
}

impl ChargeQubitParams {
    pub fn new(ec: f64, ej: f64) -> Result<Self> {
        let p = Self { ec, ej, n_cut: 12 };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        positive("ec", self.ec)?;
        if !(self.ej >= 0.0 && self.ej.is_finite()) {
            return Err(Error::Domain(format!("ej must be non-negative, got {}", self.ej)));
        }
        if self.n_cut < 5 {
            return Err(Error::Domain(format!("n_cut must be at least 5, got {}", self.n_cut)));
        }
        Ok(())
    }
}

const CUTOFF_TOL: f64 = 1e-10;

/// Eigenvalues and ground vector for the basis centred on `round(ng)`;
/// the vector is paired with the charges `k − ng`.
fn diagonalize(p: &ChargeQubitParams, ng: f64, n_cut: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let centre = ng.round();
    let dim = 2 * n_cut + 1;
    let charges: Vec<f64> = (0..dim).map(|i| centre + i as f64 - n_cut as f64 - ng).collect();
    let m = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            4.0 * p.ec * charges[i] * charges[i]
        } else if i.abs_diff(j) == 1 {
            -0.5 * p.ej
        } else {
            0.0
        }
    });
    let (vals, vecs) = symmetric_eigen(m);
    (vals, vecs.column(0).iter().copied().collect(), charges)
}

fn converged(p: &ChargeQubitParams, ng: f64) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    p.validate()?;
    finite("ng", ng)?;
    let a = diagonalize(p, ng, p.n_cut);
    let b = diagonalize(p, ng, p.n_cut + 2);
    let change = (a.0[0] - b.0[0]).abs();
    if change >= CUTOFF_TOL {
        return Err(Error::Resolution(format!(
            "charge cutoff {} not converged (ground energy moved {change:.3e})",
            p.n_cut
        )));
    }
    Ok(a)
}

pub fn charge_qubit_ground_energy(p: &ChargeQubitParams, ng: f64) -> Result<f64> {
    Ok(converged(p, ng)?.0[0])
}

/// Lowest `count` levels.
pub fn charge_qubit_levels(p: &ChargeQubitParams, ng: f64, count: usize) -> Result<Vec<f64>> {
    Ok(converged(p, ng)?.0.into_iter().take(count).collect())
}

/// Island voltage `∂E₀/∂n_g`, from the Hellmann–Feynman expectation
/// `⟨−8E_C(N − n_g)⟩`.
pub fn charge_qubit_voltage(p: &ChargeQubitParams, ng: f64) -> Result<f64> {
    let (vals, vec, charges) = converged(p, ng)?;
    if vals[1] - vals[0] < 1e-12 * p.ec {
        return Err(Error::Ambiguous(format!("degenerate ground state at ng = {ng}")));
    }
    Ok(vec.iter().zip(&charges).map(|(c, q)| c * c * (-8.0 * p.ec * q)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Reads the parity of `n` from the voltage sign at `n_g = 1/4 + n/2`.
pub fn parity_measurement(p: &ChargeQubitParams, n: i64) -> Result<Parity> {
    let v = charge_qubit_voltage(p, 0.25 + 0.5 * n as f64)?;
    if v.abs() < 1e-9 {
        return Err(Error::Ambiguous(format!("voltage {v:e} too small to read")));
    }
    Ok(if v > 0.0 { Parity::Even } else { Parity::Odd })
}
