use std::f64::consts::PI;

use crate::error::{positive, Result};

/// `cos(πx)`, exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r <= 1.0 {
        (PI * (0.5 - r)).sin()
    } else {
        -(PI * (1.5 - r)).sin()
    }
}

/// Two vortex junctions in parallel around an island of charge `q` (2e = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquidParams {
    pub ec: f64,
    pub q: f64,
}

impl SquidParams {
    pub fn new(ec: f64, q: f64) -> Result<Self> {
        positive("ec", ec)?;
        Ok(Self { ec, q })
    }
}

/// `−E_C cos(πq) cos(Δθ)`; the switch is off at `q = 1/2`.
pub fn squid_energy(p: &SquidParams, dtheta: f64) -> f64 {
    -p.ec * cos_pi(p.q) * dtheta.cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitPhase {
    Zero,
    Pi,
}

/// Two-path vortex interference current `cos(π q_ext + Θ)`, unit amplitude.
pub fn ac_interference_current(q_ext: f64, phase: QubitPhase) -> f64 {
    match phase {
        QubitPhase::Zero => cos_pi(q_ext),
        QubitPhase::Pi => cos_pi(q_ext + 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_pi_matches_cos() {
        for k in -40..40 {
            let x = k as f64 * 0.137;
            assert!((cos_pi(x) - (PI * x).cos()).abs() < 1e-14);
        }
        assert_eq!(cos_pi(0.5), 0.0);
        assert_eq!(cos_pi(-2.5), 0.0);
    }

    #[test]
    fn squid_values() {
        let p = SquidParams::new(2.0, 0.5).unwrap();
        assert_eq!(squid_energy(&p, 0.3), 0.0);
        assert_eq!(squid_energy(&SquidParams::new(2.0, 0.0).unwrap(), 0.0), -2.0);
        assert_eq!(squid_energy(&SquidParams::new(2.0, 1.0).unwrap(), 0.0), 2.0);
        assert!(SquidParams::new(0.0, 0.0).is_err());
    }

    #[test]
    fn interference_nodes() {
        assert_eq!(ac_interference_current(0.0, QubitPhase::Zero), 1.0);
        assert_eq!(ac_interference_current(0.0, QubitPhase::Pi), -1.0);
        assert_eq!(ac_interference_current(0.5, QubitPhase::Zero), 0.0);
        assert_eq!(ac_interference_current(0.5, QubitPhase::Pi), 0.0);
    }
}
