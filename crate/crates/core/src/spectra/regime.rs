use std::f64::consts::PI;

use crate::error::{positive, Error, Result};
use crate::kernel::{interaction_kernel, KernelTable};

/// Exciton tunnelling energy `(4/π⁴) (E_C^y)² / (−I'(1,0;β) E_J^y)`.
pub fn exciton_coupling(ecy: f64, ejy: f64, beta: f64, table: &KernelTable) -> Result<f64> {
    positive("ecy", ecy)?;
    positive("ejy", ejy)?;
    if table.beta() != beta {
        return Err(Error::Domain(format!("table beta {} differs from {beta}", table.beta())));
    }
    let k10 = -table.get(1, 0)?;
    Ok(4.0 / PI.powi(4) * ecy * ecy / (k10 * ejy))
}

/// Margins of the two inequalities that define the working regime, and the
/// parameter hierarchy flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub beta: f64,
    /// `(E_C^y/E_J^y)² / (π⁴ |I'(0,1)| |I'(1,0)|)`: single vortices frozen out
    /// while excitons stay mobile.
    pub superfluid_margin: f64,
    /// `|I'(1,0)| E_J^y / ((4/π²) E_C^y)`: validity of the exciton projection.
    pub projection_margin: f64,
    pub ejy_over_ejx: bool,
    pub ecy_over_ecx: bool,
    pub ejx_over_ecx: bool,
    pub ejy_over_ecy: bool,
}

impl RegimeReport {
    pub fn both_margins_exceed(&self, factor: f64) -> bool {
        self.superfluid_margin > factor && self.projection_margin > factor
    }
}

const FLAG_FACTOR: f64 = 10.0;

fn margins(ecy: f64, ejy: f64, k10: f64, k01: f64) -> (f64, f64) {
    let r = ecy / ejy;
    (r * r / (PI.powi(4) * k01 * k10), k10 * ejy / (4.0 / (PI * PI) * ecy))
}

/// Evaluates the regime inequalities; `table` must be built at
/// `β = E_J^y / E_J^x`.
pub fn regime_check(ejy: f64, ejx: f64, ecy: f64, ecx: f64, table: &KernelTable) -> Result<RegimeReport> {
    for (name, v) in [("ejy", ejy), ("ejx", ejx), ("ecy", ecy), ("ecx", ecx)] {
        positive(name, v)?;
    }
    let beta = ejy / ejx;
    if ((table.beta() - beta) / beta).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "table beta {} differs from ejy/ejx = {beta}",
            table.beta()
        )));
    }
    let (k10, k01) = (-table.get(1, 0)?, -table.get(0, 1)?);
    let (superfluid_margin, projection_margin) = margins(ecy, ejy, k10, k01);
    Ok(RegimeReport {
        beta,
        superfluid_margin,
        projection_margin,
        ejy_over_ejx: ejy >= FLAG_FACTOR * ejx,
        ecy_over_ecx: ecy >= FLAG_FACTOR * ecx,
        ejx_over_ecx: ejx >= FLAG_FACTOR * ecx,
        ejy_over_ecy: ejy >= FLAG_FACTOR * ecy,
    })
}

/// Searches a log grid of `β ∈ [1, 10¹²]` and `E_C^y/E_J^y ∈ [10⁻⁸, 1]`
/// (with `E_J^y = 1`) for the smallest `β` at which both margins exceed
/// `factor`. Returns `(β, E_C^y, superfluid_margin, projection_margin)`.
pub fn regime_search(factor: f64, points_per_decade: usize) -> Result<Option<(f64, f64, f64, f64)>> {
    positive("factor", factor)?;
    if points_per_decade == 0 {
        return Err(Error::Domain("points_per_decade must be positive".into()));
    }
    let step = 1.0 / points_per_decade as f64;
    for i in 0..=12 * points_per_decade {
        let beta = 10f64.powf(i as f64 * step);
        let tol = 1e-8 * beta.recip().min(1.0);
        let k10 = -interaction_kernel(1, 0, beta, tol)?;
        let k01 = -interaction_kernel(0, 1, beta, tol)?;
        for j in 0..=8 * points_per_decade {
            let ecy = 10f64.powf(-8.0 + j as f64 * step);
            let (m1, m2) = margins(ecy, 1.0, k10, k01);
            if m1 > factor && m2 > factor {
                return Ok(Some((beta, ecy, m1, m2)));
            }
        }
    }
    Ok(None)
}

/// Least-squares fit `ln y = intercept + slope · x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn log_linear_fit(points: &[(f64, f64)]) -> Result<LogLinearFit> {
    if points.len() < 2 || points.iter().any(|p| !(p.1 > 0.0)) {
        return Err(Error::Domain("log-linear fit needs at least two positive values".into()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("log-linear fit needs distinct abscissae".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LogLinearFit { slope, intercept: my - slope * mx, r_squared })
}
