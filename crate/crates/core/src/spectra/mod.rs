//! Exact diagonalization of the phase-slip, exciton-chain and ladder models.

mod band;
mod chain;
mod double_well;
mod effective;
mod ladder;
mod phase_slip;
mod regime;

pub use band::{theta_grid, BandCurve};
pub use chain::{chain_ground_band, chain_hamiltonian, map_kcmq_params, ChainSpec, KcmqMapping};
pub use double_well::{double_well_spectrum, DoubleWell};
pub use effective::{effective_vs_full_check, project_chain, EffectiveReport};
pub use ladder::{
    barrier_scaling, ladder_band_with_corners, ladder_ground_band, ladder_hamiltonian,
    LadderSpec,
};
pub use phase_slip::{phase_slip_band, phase_slip_energy};
pub use regime::{
    exciton_coupling, log_linear_fit, regime_check, regime_search, LogLinearFit, RegimeReport,
};

use crate::error::{Error, Result};

/// Default ceiling on Hilbert-space dimension.
pub const DEFAULT_DIM_LIMIT: usize = 1_000_000;

/// Product basis of `sites` integer occupations in `[-cutoff, cutoff]`,
/// indexed little-endian with site 0 fastest.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Basis {
    pub sites: usize,
    pub cutoff: i64,
    pub base: usize,
    pub dim: usize,
}

impl Basis {
    pub fn new(sites: usize, cutoff: usize, limit: usize) -> Result<Self> {
        let base = 2 * cutoff + 1;
        let mut dim: usize = 1;
        for _ in 0..sites {
            dim = match dim.checked_mul(base) {
                Some(d) if d <= limit => d,
                _ => {
                    let approx = (base as f64).powi(sites as i32);
                    return Err(Error::Capacity { dim: approx.min(usize::MAX as f64) as usize, limit });
                }
            };
        }
        Ok(Self { sites, cutoff: cutoff as i64, base, dim })
    }

    pub fn state(&self, mut index: usize) -> Vec<i64> {
        (0..self.sites)
            .map(|_| {
                let d = index % self.base;
                index /= self.base;
                d as i64 - self.cutoff
            })
            .collect()
    }

    #[cfg(test)]
    pub fn index(&self, state: &[i64]) -> usize {
        state.iter().rev().fold(0, |acc, &v| acc * self.base + (v + self.cutoff) as usize)
    }

    pub fn allowed(&self, v: i64) -> bool {
        v.abs() <= self.cutoff
    }

    /// Index offset of raising site `s` by one.
    pub fn stride(&self, s: usize) -> usize {
        self.base.pow(s as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_roundtrip() {
        let b = Basis::new(3, 1, 100).unwrap();
        assert_eq!(b.dim, 27);
        for i in 0..b.dim {
            assert_eq!(b.index(&b.state(i)), i);
        }
        assert_eq!(b.state(0), vec![-1, -1, -1]);
        assert_eq!(b.stride(2), 9);
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(Basis::new(8, 1, 1000), Err(Error::Capacity { dim: 6561, limit: 1000 })));
    }
}
