use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::KernelTable;

use super::{chain_ground_band, ladder_ground_band, ChainSpec, LadderSpec};

/// Exciton chain obtained from a ladder at second order in the vortex hop
/// `t = E_C^y/π²`.
///
/// A bulk exciton moves through a diagonal-dipole intermediate state along two
/// paths, giving `hop = 4t² / (E_d − U)` with `U = −2π E_J^y I'(0,1)` and
/// `E_d = −2π E_J^y I'(1,1)`. At an end the exciton is assembled from two
/// reservoir vortices through a lone-vortex state of energy `E_s = π E_J^y Λ`,
/// giving `hop_b = 2t² (1/E_s + 1/(E_s − U))`. The chain twist is `Θ' = 2Θ`.
pub fn project_chain(ladder: &LadderSpec, table: &KernelTable) -> Result<ChainSpec> {
    let t = ladder.hop();
    let u = -2.0 * PI * ladder.ejy * table.get(0, 1)?;
    let ed = -2.0 * PI * ladder.ejy * table.get(1, 1)?;
    let es = PI * ladder.ejy * ladder.resolved_self_energy(table.tol())?;
    if !(ed > u && es > u) {
        return Err(Error::Domain(
            "exciton projection needs intermediate states above the exciton energy".into(),
        ));
    }
    let mut chain = ChainSpec::new(ladder.n_sites, 4.0 * t * t / (ed - u), u);
    chain.n_max = ladder.v_max;
    chain.boundary_hop = Some(2.0 * t * t * (1.0 / es + 1.0 / (es - u)));
    chain.dim_limit = ladder.dim_limit;
    chain.solver = ladder.solver;
    Ok(chain)
}

/// Ladder band against its projected chain on a common `Θ` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveReport {
    pub thetas: Vec<f64>,
    /// Ladder band minus its value at `Θ = 0`.
    pub ladder_centered: Vec<f64>,
    /// π-periodic part `(E(Θ) + E(Θ+π))/2` of the ladder band, centred.
    pub ladder_periodic_centered: Vec<f64>,
    /// Chain band at `Θ' = 2Θ`, centred.
    pub chain_centered: Vec<f64>,
    pub chain_amplitude: f64,
    /// Max deviation of the π-periodic ladder band from the chain, over the
    /// chain amplitude.
    pub deviation: f64,
    /// Same with the unsymmetrized ladder band, which still carries the
    /// single-vortex error term that the chain omits.
    pub raw_deviation: f64,
}

/// Compares the ladder with an exciton chain; `thetas` must include 0.
pub fn effective_vs_full_check(
    chain: &ChainSpec,
    ladder: &LadderSpec,
    thetas: &[f64],
    table: &KernelTable,
) -> Result<EffectiveReport> {
    if !thetas.iter().any(|&t| t == 0.0) {
        return Err(Error::Domain("theta grid must contain 0".into()));
    }
    let shifted: Vec<f64> = thetas.iter().map(|t| t + PI).collect();
    let full = ladder_ground_band(ladder, thetas, table)?;
    let partner = ladder_ground_band(ladder, &shifted, table)?;
    let doubled: Vec<f64> = thetas.iter().map(|t| 2.0 * t).collect();
    let projected = chain_ground_band(chain, &doubled)?;

    let grid: Vec<f64> = {
        let mut g = thetas.to_vec();
        g.sort_by(f64::total_cmp);
        g
    };
    let at = |band: &super::BandCurve, t: f64| band.energy_at(t).expect("sampled angle");
    let raw: Vec<f64> = grid.iter().map(|&t| at(&full, t)).collect();
    let periodic: Vec<f64> = grid.iter().map(|&t| 0.5 * (at(&full, t) + at(&partner, t + PI))).collect();
    let chain_e: Vec<f64> = grid.iter().map(|&t| at(&projected, 2.0 * t)).collect();
    let zero = grid.iter().position(|&t| t == 0.0).unwrap();
    let centre = |v: &[f64]| v.iter().map(|e| e - v[zero]).collect::<Vec<f64>>();
    let (raw, periodic, chain_c) = (centre(&raw), centre(&periodic), centre(&chain_e));
    let amp = chain_c.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - chain_c.iter().copied().fold(f64::INFINITY, f64::min);
    let maxdev = |a: &[f64]| a.iter().zip(&chain_c).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let norm = |d: f64| if amp > 0.0 { d / amp } else { d };
    Ok(EffectiveReport {
        thetas: grid,
        deviation: norm(maxdev(&periodic)),
        raw_deviation: norm(maxdev(&raw)),
        ladder_centered: raw,
        ladder_periodic_centered: periodic,
        chain_centered: chain_c,
        chain_amplitude: amp,
    })
}
