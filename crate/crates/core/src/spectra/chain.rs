use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{positive, Error, Result};
use crate::linalg::{Hermitian, HermitianBuilder, Solver};

use super::{BandCurve, Basis, DEFAULT_DIM_LIMIT};

/// Open exciton chain with end reservoirs at dual phases `0` and `Θ'`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub n_sites: usize,
    /// Bulk exciton tunnelling energy.
    pub hop: f64,
    /// On-site charging scale `U`.
    pub charging: f64,
    pub n_max: usize,
    /// Static twist `Θ'` used by single-point evaluations.
    pub boundary_phase: f64,
    /// End-reservoir tunnelling; equals `hop` when unset.
    pub boundary_hop: Option<f64>,
    pub dim_limit: usize,
    pub solver: Solver,
}

impl ChainSpec {
    pub fn new(n_sites: usize, hop: f64, charging: f64) -> Self {
        Self {
            n_sites,
            hop,
            charging,
            n_max: 1,
            boundary_phase: 0.0,
            boundary_hop: None,
            dim_limit: DEFAULT_DIM_LIMIT,
            solver: Solver::Auto,
        }
    }

    fn validate(&self) -> Result<Basis> {
        if self.n_sites == 0 || self.n_max == 0 {
            return Err(Error::Domain("n_sites and n_max must be at least 1".into()));
        }
        if !(self.hop >= 0.0 && self.hop.is_finite()) {
            return Err(Error::Domain(format!("hop must be non-negative, got {}", self.hop)));
        }
        positive("charging", self.charging)?;
        if let Some(b) = self.boundary_hop {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(Error::Domain(format!("boundary_hop must be non-negative, got {b}")));
            }
        }
        Basis::new(self.n_sites, self.n_max, self.dim_limit)
    }
}

/// KCMQ chain couplings from junction parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KcmqMapping {
    /// `E_J^ex = E_J² / E_1`.
    pub hop: f64,
    /// `4 E_I`.
    pub charging: f64,
}

impl KcmqMapping {
    /// Exciton condensate regime, `E_J^ex ≥ 10 · charging`.
    pub fn condensate(&self) -> bool {
        self.hop >= 10.0 * self.charging
    }
}

pub fn map_kcmq_params(ej: f64, e1: f64, ei: f64) -> Result<KcmqMapping> {
    positive("ej", ej)?;
    positive("e1", e1)?;
    positive("ei", ei)?;
    Ok(KcmqMapping { hop: ej * ej / e1, charging: 4.0 * ei })
}

/// `H = U Σ n² − (hop/2) Σ (R_x L_{x+1} + h.c.) − (hop_b/2)[(R_1 + h.c.) + (e^{−iΘ'} R_N + h.c.)]`.
pub fn chain_hamiltonian(spec: &ChainSpec, theta: f64) -> Result<Hermitian> {
    let basis = spec.validate()?;
    let hb = spec.boundary_hop.unwrap_or(spec.hop);
    let n = spec.n_sites;
    let mut b = HermitianBuilder::new(basis.dim);
    for i in 0..basis.dim {
        let s = basis.state(i);
        b.add_diag(i, spec.charging * s.iter().map(|&v| (v * v) as f64).sum::<f64>());
        for x in 0..n.saturating_sub(1) {
            if basis.allowed(s[x] + 1) && basis.allowed(s[x + 1] - 1) {
                let j = i + basis.stride(x) - basis.stride(x + 1);
                b.add_pair(j, i, Complex64::new(-0.5 * spec.hop, 0.0));
            }
        }
        if hb != 0.0 {
            for (x, phase) in [(0, 0.0), (n - 1, theta)] {
                if basis.allowed(s[x] + 1) {
                    let j = i + basis.stride(x);
                    b.add_pair(j, i, -0.5 * hb * Complex64::from_polar(1.0, -phase));
                }
            }
        }
    }
    Ok(b.build())
}

/// Ground energy of the chain at every twist `Θ'` in `thetas`.
pub fn chain_ground_band(spec: &ChainSpec, thetas: &[f64]) -> Result<BandCurve> {
    spec.validate()?;
    let samples = thetas
        .par_iter()
        .map(|&t| Ok((t, chain_hamiltonian(spec, t)?.lowest(spec.solver)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandCurve::new(samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::theta_grid;

    #[test]
    fn kcmq_mapping() {
        let m = map_kcmq_params(1.0, 100.0, 0.001).unwrap();
        assert!((m.hop - 0.01).abs() < 1e-15 && (m.charging - 0.004).abs() < 1e-15);
        assert!(!m.condensate());
        assert!(map_kcmq_params(1.0, 100.0, 1e-4).unwrap().condensate());
        let m = map_kcmq_params(1.0, 1.0, 0.25).unwrap();
        assert_eq!((m.hop, m.charging), (1.0, 1.0));
        assert!(!m.condensate());
    }

    #[test]
    fn decoupled_chain_is_flat() {
        let spec = ChainSpec::new(3, 0.0, 1.0);
        let band = chain_ground_band(&spec, &theta_grid(8)).unwrap();
        assert!(band.amplitude() == 0.0);
    }

    #[test]
    fn bulk_conserves_number_without_reservoirs() {
        let mut spec = ChainSpec::new(3, 0.7, 1.0);
        spec.boundary_hop = Some(0.0);
        let basis = Basis::new(3, 1, 100).unwrap();
        let h = chain_hamiltonian(&spec, 1.0).unwrap();
        assert!(h.preserves(|i| basis.state(i).iter().sum()));
        spec.boundary_hop = None;
        let h = chain_hamiltonian(&spec, 1.0).unwrap();
        assert!(!h.preserves(|i| basis.state(i).iter().sum()));
    }

    #[test]
    fn capacity_error() {
        let mut spec = ChainSpec::new(20, 1.0, 1.0);
        spec.dim_limit = 1000;
        assert!(matches!(chain_ground_band(&spec, &[0.0]), Err(Error::Capacity { .. })));
    }
}
