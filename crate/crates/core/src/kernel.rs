//! Anisotropic vortex–vortex interaction kernel.
//!
//! `I'(dx, dy; β) = ∫₀^π [e^{−|dx| s} cos(dy q) − 1] / sinh s dq` with
//! `cosh s = 1 + β(1 − cos q)`. The two pieces of the numerator diverge
//! separately at `q → 0`; the combined integrand tends to `−|dx|`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{positive, Error, Result};
use crate::quadrature;

/// Josephson anisotropy `E_J^y / E_J^x`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AnisotropyBeta(f64);

impl AnisotropyBeta {
    pub fn new(beta: f64) -> Result<Self> {
        positive("beta", beta)?;
        Ok(Self(beta))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

pub const DEFAULT_TOL: f64 = 1e-10;

fn integrand(dx: f64, dy: f64, beta: f64, q: f64) -> f64 {
    let half = (0.5 * q).sin();
    let a = 2.0 * beta * half * half;
    let sinh_s = (a * (2.0 + a)).sqrt();
    if sinh_s == 0.0 {
        return -dx;
    }
    let s = (a + sinh_s).ln_1p();
    let sd = (0.5 * dy * q).sin();
    ((-dx * s).exp_m1() * (dy * q).cos() - 2.0 * sd * sd) / sinh_s
}

/// Breakpoints refining geometrically toward `q = 0`, where the integrand
/// varies on the scale `1/(√β (1 + |dx|))` for large β.
fn breakpoints(dx: f64, beta: f64) -> Vec<f64> {
    let scale = 1.0 / (beta.max(1.0).sqrt() * (1.0 + dx));
    let mut pts = vec![PI];
    let mut p = PI;
    while p > 1e-2 * scale {
        p *= 0.5;
        pts.push(p);
    }
    pts.push(0.0);
    pts.reverse();
    pts
}

/// `I'(dx, dy; β)` to absolute tolerance `tol`.
pub fn interaction_kernel(dx: i64, dy: i64, beta: f64, tol: f64) -> Result<f64> {
    positive("beta", beta)?;
    positive("tol", tol)?;
    let (dx, dy) = (dx.unsigned_abs() as f64, dy.unsigned_abs() as f64);
    if dx == 0.0 && dy == 0.0 {
        return Ok(0.0);
    }
    let q = quadrature::integrate(|q| integrand(dx, dy, beta, q), &breakpoints(dx, beta), tol)?;
    // The integrand is strictly negative on (0, π]; clamp roundoff at huge β.
    Ok(q.value.min(-f64::MIN_POSITIVE))
}

/// Exciton orientation ratio `R(β) = I'(1,0;β) / I'(0,1;β)`.
pub fn anisotropy_ratio(beta: f64, tol: f64) -> Result<f64> {
    Ok(interaction_kernel(1, 0, beta, tol)? / interaction_kernel(0, 1, beta, tol)?)
}

/// Tabulated kernel on `|dx|, |dy| ≤ max_range`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    beta: AnisotropyBeta,
    max_range: usize,
    tol: f64,
    // quadrant values indexed by |dx| * (max_range + 1) + |dy|
    values: Vec<f64>,
}

impl KernelTable {
    pub fn beta(&self) -> f64 {
        self.beta.get()
    }

    pub fn max_range(&self) -> usize {
        self.max_range
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn covers(&self, dx: i64, dy: i64) -> bool {
        dx.unsigned_abs() as usize <= self.max_range && dy.unsigned_abs() as usize <= self.max_range
    }

    pub fn get(&self, dx: i64, dy: i64) -> Result<f64> {
        if !self.covers(dx, dy) {
            return Err(Error::Coverage { dx, dy, max_range: self.max_range });
        }
        let (ax, ay) = (dx.unsigned_abs() as usize, dy.unsigned_abs() as usize);
        Ok(self.values[ax * (self.max_range + 1) + ay])
    }

    /// Rebuilds a table from externally stored quadrant values, checking the
    /// table invariants.
    pub fn from_quadrant(beta: f64, max_range: usize, tol: f64, values: Vec<f64>) -> Result<Self> {
        let beta = AnisotropyBeta::new(beta)?;
        positive("tol", tol)?;
        if max_range == 0 {
            return Err(Error::Domain("max_range must be at least 1".into()));
        }
        let n = max_range + 1;
        if values.len() != n * n {
            return Err(Error::Domain(format!("expected {} values, got {}", n * n, values.len())));
        }
        for (i, &v) in values.iter().enumerate() {
            let ok = if i == 0 { v == 0.0 } else { v < 0.0 && v.is_finite() };
            if !ok {
                return Err(Error::Domain(format!(
                    "kernel value {v} at ({}, {}) violates sign invariant",
                    i / n,
                    i % n
                )));
            }
        }
        Ok(Self { beta, max_range, tol, values })
    }

    /// All entries on the full signed grid, row-major in `dx` then `dy`.
    pub fn entries(&self) -> Vec<(i64, i64, f64)> {
        let m = self.max_range as i64;
        let mut out = Vec::with_capacity((2 * self.max_range + 1).pow(2));
        for dx in -m..=m {
            for dy in -m..=m {
                out.push((dx, dy, self.get(dx, dy).unwrap()));
            }
        }
        out
    }
}

/// Computes every kernel value with `|dx|, |dy| ≤ max_range`.
pub fn build_kernel_table(beta: f64, max_range: usize, tol: f64) -> Result<KernelTable> {
    build_with(beta, max_range, tol, |dx, dy| interaction_kernel(dx, dy, beta, tol))
}

fn build_with<F>(beta: f64, max_range: usize, tol: f64, eval: F) -> Result<KernelTable>
where
    F: Fn(i64, i64) -> Result<f64> + Sync,
{
    AnisotropyBeta::new(beta)?;
    positive("tol", tol)?;
    if max_range == 0 {
        return Err(Error::Domain("max_range must be at least 1".into()));
    }
    let n = max_range + 1;
    let values = (0..n * n)
        .into_par_iter()
        .map(|i| eval((i / n) as i64, (i % n) as i64))
        .collect::<Result<Vec<_>>>()?;
    KernelTable::from_quadrant(beta, max_range, tol, values)
}

/// In-memory memo of kernel values keyed by `(β, tol, |dx|, |dy|)`.
///
/// Stored values are the exact results of [`interaction_kernel`], so a hit is
/// bit-identical to a fresh evaluation.
#[derive(Debug, Default)]
pub struct KernelCache {
    map: Mutex<HashMap<(u64, u64, u64, u64), f64>>,
}

impl KernelCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kernel(&self, dx: i64, dy: i64, beta: f64, tol: f64) -> Result<f64> {
        let key = (beta.to_bits(), tol.to_bits(), dx.unsigned_abs(), dy.unsigned_abs());
        if let Some(&v) = self.map.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let v = interaction_kernel(dx, dy, beta, tol)?;
        self.map.lock().unwrap().insert(key, v);
        Ok(v)
    }

    pub fn table(&self, beta: f64, max_range: usize, tol: f64) -> Result<KernelTable> {
        build_with(beta, max_range, tol, |dx, dy| self.kernel(dx, dy, beta, tol))
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub const CACHE_HEADER: &str = "VORTEXION-KERNEL v1";

/// Serializes a table to the plain-text cache format.
pub fn write_cache(table: &KernelTable) -> String {
    let mut s = format!(
        "{CACHE_HEADER}\nbeta={} tol={} max_range={}\n",
        table.beta(),
        table.tol(),
        table.max_range()
    );
    for (dx, dy, v) in table.entries() {
        s.push_str(&format!("{dx} {dy} {v:.16e}\n"));
    }
    s
}

/// Parses the cache format, rejecting malformed, incomplete or asymmetric
/// content.
pub fn read_cache(text: &str) -> Result<KernelTable> {
    let bad = |msg: String| Error::Domain(format!("kernel cache: {msg}"));
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_HEADER) {
        return Err(bad("missing or mismatched header".into()));
    }
    let meta = lines.next().ok_or_else(|| bad("missing metadata line".into()))?;
    let mut beta = None;
    let mut tol = None;
    let mut max_range = None;
    for field in meta.split_whitespace() {
        match field.split_once('=') {
            Some(("beta", v)) => beta = v.parse::<f64>().ok(),
            Some(("tol", v)) => tol = v.parse::<f64>().ok(),
            Some(("max_range", v)) => max_range = v.parse::<usize>().ok(),
            _ => return Err(bad(format!("unexpected metadata field `{field}`"))),
        }
    }
    let (beta, tol, max_range) = match (beta, tol, max_range) {
        (Some(b), Some(t), Some(m)) if m > 0 => (b, t, m),
        _ => return Err(bad("incomplete metadata".into())),
    };
    let m = max_range as i64;
    let side = 2 * max_range + 1;
    let mut grid: Vec<Option<f64>> = vec![None; side * side];
    for (k, line) in lines.enumerate() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let parsed = match parts.as_slice() {
            [a, b, c] => a.parse::<i64>().ok().zip(b.parse::<i64>().ok()).zip(c.parse::<f64>().ok()),
            _ => None,
        };
        let ((dx, dy), v) = parsed.ok_or_else(|| bad(format!("malformed row {}", k + 3)))?;
        if dx.abs() > m || dy.abs() > m {
            return Err(bad(format!("row {} outside max_range", k + 3)));
        }
        let slot = &mut grid[((dx + m) as usize) * side + (dy + m) as usize];
        if slot.replace(v).is_some() {
            return Err(bad(format!("duplicate displacement ({dx}, {dy})")));
        }
    }
    let at = |dx: i64, dy: i64| grid[((dx + m) as usize) * side + (dy + m) as usize];
    let n = max_range + 1;
    let mut values = Vec::with_capacity(n * n);
    for ax in 0..=m {
        for ay in 0..=m {
            let v = at(ax, ay).ok_or_else(|| bad(format!("missing ({ax}, {ay})")))?;
            for (sx, sy) in [(-ax, ay), (ax, -ay), (-ax, -ay)] {
                match at(sx, sy) {
                    Some(w) if w.to_bits() == v.to_bits() => {}
                    Some(_) => return Err(bad(format!("reflection asymmetry at ({sx}, {sy})"))),
                    None => return Err(bad(format!("missing ({sx}, {sy})"))),
                }
            }
            values.push(v);
        }
    }
    KernelTable::from_quadrant(beta, max_range, tol, values)
}
