//! Classical energetics of vortex configurations on the dual lattice.

mod xy;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{positive, Error, Result};
use crate::kernel::{interaction_kernel, KernelTable, DEFAULT_TOL};

pub use xy::{xy_relax_pair_energy, xy_relax_with, XYLatticeSpec, XYRelaxation};

/// Integer vorticities on a finite `width × height` dual lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VortexConfiguration {
    width: usize,
    height: usize,
    charges: BTreeMap<(i64, i64), i64>,
}

impl VortexConfiguration {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Domain("lattice extent must be positive".into()));
        }
        Ok(Self { width, height, charges: BTreeMap::new() })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Sets the vorticity at `(x, y)`; zero removes the site.
    pub fn set(&mut self, x: i64, y: i64, charge: i64) -> Result<()> {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return Err(Error::Domain(format!(
                "site ({x}, {y}) outside {}x{} lattice",
                self.width, self.height
            )));
        }
        if charge == 0 {
            self.charges.remove(&(x, y));
        } else {
            self.charges.insert((x, y), charge);
        }
        Ok(())
    }

    pub fn with(mut self, x: i64, y: i64, charge: i64) -> Result<Self> {
        self.set(x, y, charge)?;
        Ok(self)
    }

    pub fn charge(&self, x: i64, y: i64) -> i64 {
        self.charges.get(&(x, y)).copied().unwrap_or(0)
    }

    pub fn total_charge(&self) -> i64 {
        self.charges.values().sum()
    }

    pub fn is_neutral(&self) -> bool {
        self.total_charge() == 0
    }

    /// Non-zero sites in `(x, y)` order.
    pub fn sites(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.charges.iter().map(|(&(x, y), &q)| (x, y, q))
    }

    /// `x y charge` rows, one per non-zero site.
    pub fn to_rows(&self) -> String {
        self.sites().map(|(x, y, q)| format!("{x} {y} {q}\n")).collect()
    }

    pub fn from_rows(width: usize, height: usize, text: &str) -> Result<Self> {
        let mut c = Self::new(width, height)?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Domain(format!("line {}: {e}", i + 1)))?;
            match f.as_slice() {
                [x, y, q] => c.set(*x, *y, c.charge(*x, *y) + q)?,
                _ => return Err(Error::Domain(format!("line {}: expected `x y charge`", i + 1))),
            }
        }
        Ok(c)
    }
}

/// `π E_J^y Σ_{i,j} V_i I'(r_i − r_j) V_j` over ordered pairs.
pub fn config_energy(config: &VortexConfiguration, ejy: f64, table: &KernelTable) -> Result<f64> {
    positive("ejy", ejy)?;
    if !config.is_neutral() {
        return Err(Error::Neutrality(config.total_charge()));
    }
    let sites: Vec<_> = config.sites().collect();
    let mut sum = 0.0;
    for &(xi, yi, qi) in &sites {
        for &(xj, yj, qj) in &sites {
            sum += (qi * qj) as f64 * table.get(xi - xj, yi - yj)?;
        }
    }
    Ok(PI * ejy * sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Energy of a nearest-neighbour vortex–antivortex pair.
pub fn dipole_energy(orientation: Orientation, ejy: f64, beta: f64) -> Result<f64> {
    positive("ejy", ejy)?;
    let k = match orientation {
        Orientation::Horizontal => interaction_kernel(1, 0, beta, DEFAULT_TOL)?,
        Orientation::Vertical => interaction_kernel(0, 1, beta, DEFAULT_TOL)?,
    };
    Ok(-2.0 * PI * ejy * k)
}

/// Two parallel plates of `L + 1` unit vortex charges each, one row apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitorSpec {
    plate_length: usize,
    ej: f64,
}

impl CapacitorSpec {
    pub fn new(plate_length: usize, ej: f64) -> Result<Self> {
        if plate_length == 0 {
            return Err(Error::Domain("plate_length must be at least 1".into()));
        }
        positive("ej", ej)?;
        Ok(Self { plate_length, ej })
    }

    pub fn plate_length(&self) -> usize {
        self.plate_length
    }

    pub fn separation(&self) -> usize {
        1
    }

    pub fn ej(&self) -> f64 {
        self.ej
    }

    /// Vortex charge unit `m = sqrt(2π² ε₀ E_J)`.
    pub fn charge_unit(&self) -> f64 {
        (2.0 * PI * PI * self.ej).sqrt()
    }

    pub fn configuration(&self) -> VortexConfiguration {
        let n = self.plate_length + 1;
        let mut c = VortexConfiguration::new(n, 2).expect("non-empty lattice");
        for x in 0..n as i64 {
            c.set(x, 0, 1).expect("in range");
            c.set(x, 1, -1).expect("in range");
        }
        c
    }
}

/// Stored energy of the plate configuration with every charge pair counted
/// once, which is the normalization under which `m² = 2π² E_J`.
pub fn capacitor_energy_exact(spec: &CapacitorSpec, table: &KernelTable) -> Result<f64> {
    if table.beta() != 1.0 {
        return Err(Error::Domain(format!(
            "capacitor energy needs an isotropic table, got beta = {}",
            table.beta()
        )));
    }
    Ok(0.5 * config_energy(&spec.configuration(), spec.ej, table)?)
}

/// `Q²/2C` estimate `π² E_J (L + 1)² / L`.
pub fn capacitor_energy_coulomb(spec: &CapacitorSpec) -> f64 {
    let l = spec.plate_length as f64;
    PI * PI * spec.ej * (l + 1.0) * (l + 1.0) / l
}

pub fn capacitor_ratio(plate_length: usize, table: &KernelTable) -> Result<f64> {
    let spec = CapacitorSpec::new(plate_length, 1.0)?;
    Ok(capacitor_energy_coulomb(&spec) / capacitor_energy_exact(&spec, table)?)
}
