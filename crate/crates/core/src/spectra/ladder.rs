use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{positive, Error, Result};
use crate::kernel::{interaction_kernel, KernelTable};
use crate::linalg::{symmetric_eigen, Hermitian, HermitianBuilder, Solver};

use super::{BandCurve, Basis, DEFAULT_DIM_LIMIT};

/// Two-leg vortex ladder of `n_sites` rungs.
///
/// Site `(l, x)` carries vorticity `V_l(x) ∈ [−v_max, v_max]`. The classical
/// energy is `π E_J^y [Σ_{i≠j} V_i I'_ij V_j + Λ (Σ V)²]`, where the kernel is
/// cut at `|Δx| ≤ kernel_range` and `Λ` (`self_energy`) prices net vorticity.
/// Vortices hop along each leg with amplitude `E_C^y / π²`; each leg end
/// couples to a reservoir at a fixed corner phase.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSpec {
    pub n_sites: usize,
    pub ejy: f64,
    pub beta: f64,
    pub ecy: f64,
    pub v_max: usize,
    pub kernel_range: usize,
    /// Corner phases `(θ₁, θ₂, θ₃, θ₄)`: leg 1 left, leg 1 right, leg 2
    /// right, leg 2 left.
    pub corner_phases: [f64; 4],
    /// `Λ`; defaults to `−I'(N, 1; β)`.
    pub self_energy: Option<f64>,
    pub dim_limit: usize,
    pub solver: Solver,
}

impl LadderSpec {
    pub fn new(n_sites: usize, ejy: f64, beta: f64, ecy: f64) -> Self {
        Self {
            n_sites,
            ejy,
            beta,
            ecy,
            v_max: 1,
            kernel_range: n_sites.saturating_sub(1).max(1),
            corner_phases: [0.0; 4],
            self_energy: None,
            dim_limit: DEFAULT_DIM_LIMIT,
            solver: Solver::Auto,
        }
    }

    /// Same ladder with a different rung count and full-extent kernel range.
    pub fn with_sites(&self, n_sites: usize) -> Self {
        Self { n_sites, kernel_range: n_sites.saturating_sub(1).max(1), ..self.clone() }
    }

    pub fn hop(&self) -> f64 {
        self.ecy / (PI * PI)
    }

    pub fn dim(&self) -> Result<usize> {
        Ok(Basis::new(2 * self.n_sites, self.v_max, self.dim_limit)?.dim)
    }

    /// Resolved `Λ`.
    pub fn resolved_self_energy(&self, tol: f64) -> Result<f64> {
        match self.self_energy {
            Some(l) => Ok(l),
            None => Ok(-interaction_kernel(self.n_sites as i64, 1, self.beta, tol)?),
        }
    }

    fn validate(&self, table: &KernelTable) -> Result<Basis> {
        if self.n_sites == 0 || self.v_max == 0 || self.kernel_range == 0 {
            return Err(Error::Domain("n_sites, v_max and kernel_range must be at least 1".into()));
        }
        positive("ejy", self.ejy)?;
        positive("beta", self.beta)?;
        if !(self.ecy >= 0.0 && self.ecy.is_finite()) {
            return Err(Error::Domain(format!("ecy must be non-negative, got {}", self.ecy)));
        }
        if table.beta() != self.beta {
            return Err(Error::Domain(format!(
                "kernel table beta {} does not match ladder beta {}",
                table.beta(),
                self.beta
            )));
        }
        let reach = self.kernel_range.min(self.n_sites - 1) as i64;
        if !table.covers(reach, 1) {
            return Err(Error::Coverage { dx: reach, dy: 1, max_range: table.max_range() });
        }
        Basis::new(2 * self.n_sites, self.v_max, self.dim_limit)
    }

    /// Charge matrix `K` with `V·K·V` the bracketed classical energy.
    fn charge_matrix(&self, table: &KernelTable) -> Result<DMatrix<f64>> {
        let n = self.n_sites;
        let lambda = self.resolved_self_energy(table.tol())?;
        let mut k = DMatrix::from_element(2 * n, 2 * n, lambda);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let dx = (a % n) as i64 - (b % n) as i64;
                let dy = (a / n) as i64 - (b / n) as i64;
                if a != b && dx.unsigned_abs() as usize <= self.kernel_range {
                    k[(a, b)] += table.get(dx, dy)?;
                }
            }
        }
        let (vals, _) = symmetric_eigen(k.clone());
        let scale = k.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if vals[0] < -1e-12 * scale {
            return Err(Error::Domain(format!(
                "self_energy {lambda} leaves the vortex interaction unbounded below \
                 (lowest charge-matrix eigenvalue {:.3e})",
                vals[0]
            )));
        }
        Ok(k)
    }
}

/// Ladder Hamiltonian at corner phases `corners = (θ₁, θ₂, θ₃, θ₄)`.
pub fn ladder_hamiltonian(spec: &LadderSpec, corners: [f64; 4], table: &KernelTable) -> Result<Hermitian> {
    let basis = spec.validate(table)?;
    let k = spec.charge_matrix(table)?;
    Ok(assemble(spec, &basis, &k, corners))
}

fn assemble(spec: &LadderSpec, basis: &Basis, k: &DMatrix<f64>, corners: [f64; 4]) -> Hermitian {
    let n = spec.n_sites;
    let t = spec.hop();
    let ends = [(0, corners[0]), (n - 1, corners[1]), (2 * n - 1, corners[2]), (n, corners[3])];
    let mut b = HermitianBuilder::new(basis.dim);
    for i in 0..basis.dim {
        let s = basis.state(i);
        let mut e = 0.0;
        for a in 0..2 * n {
            if s[a] != 0 {
                for c in 0..2 * n {
                    e += (s[a] * s[c]) as f64 * k[(a, c)];
                }
            }
        }
        b.add_diag(i, PI * spec.ejy * e);
        if t == 0.0 {
            continue;
        }
        for leg in 0..2 {
            for x in 0..n - 1 {
                let (p, q) = (leg * n + x, leg * n + x + 1);
                if basis.allowed(s[p] + 1) && basis.allowed(s[q] - 1) {
                    b.add_pair(i + basis.stride(p) - basis.stride(q), i, Complex64::new(-t, 0.0));
                }
            }
        }
        for &(site, phase) in &ends {
            if basis.allowed(s[site] + 1) {
                b.add_pair(i + basis.stride(site), i, -t * Complex64::from_polar(1.0, -phase));
            }
        }
    }
    b.build()
}

/// Ground band over `thetas`, with the corner phases chosen per sample.
pub fn ladder_band_with_corners<F>(
    spec: &LadderSpec,
    thetas: &[f64],
    table: &KernelTable,
    corners: F,
) -> Result<BandCurve>
where
    F: Fn(f64) -> [f64; 4] + Sync,
{
    let basis = spec.validate(table)?;
    let k = spec.charge_matrix(table)?;
    let samples = thetas
        .par_iter()
        .map(|&th| Ok((th, assemble(spec, &basis, &k, corners(th)).lowest(spec.solver)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandCurve::new(samples))
}

/// Ground band with the wiring that ties `θ₁ = θ₃ = 0` and `θ₂ = θ₄ = Θ`.
pub fn ladder_ground_band(spec: &LadderSpec, thetas: &[f64], table: &KernelTable) -> Result<BandCurve> {
    ladder_band_with_corners(spec, thetas, table, |th| [0.0, th, 0.0, th])
}

/// Barrier height of the ground band for each ladder, which must differ
/// only in rung count.
pub fn barrier_scaling(specs: &[LadderSpec], thetas: &[f64], table: &KernelTable) -> Result<Vec<(usize, f64)>> {
    if specs.len() < 3 {
        return Err(Error::Domain("barrier scaling needs at least three ladders".into()));
    }
    let reference = specs[0].with_sites(0);
    if specs.iter().any(|s| s.with_sites(0) != reference) {
        return Err(Error::Domain("ladders must differ only in n_sites".into()));
    }
    specs
        .iter()
        .map(|s| {
            let band = ladder_ground_band(s, thetas, table)?;
            let barrier = band
                .barrier()
                .ok_or_else(|| Error::Domain("theta grid must contain 0 and pi".into()))?;
            Ok((s.n_sites, barrier))
        })
        .collect()
}
