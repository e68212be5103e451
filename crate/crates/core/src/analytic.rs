//! Closed-form parallel-plate estimates.
//!
//! Parasitic capacitances are neglected here and the coupling is taken as
//! ideal, so the Pi-model elements all equal half the facing capacitance.

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::materials::Material;

/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.8541878128e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub eps0: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants { eps0: VACUUM_PERMITTIVITY };
}

/// `eps0 * eps_r * area / distance`, farads.
pub fn main_capacitance(medium: &Material, area: f64, distance: f64) -> Result<f64> {
    require_positive("area", area)?;
    require_positive("distance", distance)?;
    Ok(PhysicalConstants::SI.eps0 * medium.eps_r * area / distance)
}

/// Pi-model of an ideally coupled plate pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdealPi {
    pub c_p: f64,
    pub c_s: f64,
    pub c_m: f64,
}

pub fn ideal_pi(c_main: f64) -> Result<IdealPi> {
    if !(c_main.is_finite() && c_main > 0.0) {
        return Err(Error::NonPositiveCapacitance(c_main));
    }
    let half = 0.5 * c_main;
    Ok(IdealPi { c_p: half, c_s: half, c_m: half })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticRow {
    pub distance: f64,
    /// Facing-plate capacitance, farads.
    pub c_main: f64,
    /// Mutual Pi capacitance, farads.
    pub c_m: f64,
}

/// Mutual capacitance of two square plates of side `plate_side` at each
/// distance.
pub fn analytic_sweep(medium: &Material, plate_side: f64, distances: &[f64]) -> Result<Vec<AnalyticRow>> {
    if distances.is_empty() {
        return Err(Error::Config("distance list is empty".into()));
    }
    let area = require_positive("plate side", plate_side)?.powi(2);
    distances
        .iter()
        .map(|&d| {
            let c_main = main_capacitance(medium, area, d)?;
            Ok(AnalyticRow { distance: d, c_main, c_m: ideal_pi(c_main)?.c_m })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::MaterialRegistry;

    fn reg() -> MaterialRegistry {
        MaterialRegistry::builtin()
    }

    #[test]
    fn plate_capacitance_examples() {
        let r = reg();
        let air = main_capacitance(r.lookup("air").unwrap(), 0.09, 0.01).unwrap();
        // 8.8541878128e-12 * 1.0058986 * 0.09 / 0.01
        assert!((air - 80.16e-12).abs() < 0.01e-12, "{air}");
        let water = main_capacitance(r.lookup("water").unwrap(), 0.09, 0.01).unwrap();
        assert!((water - 6.3829e-9).abs() < 0.001e-9, "{water}");

        let half = main_capacitance(r.lookup("glass").unwrap(), 0.09, 0.02).unwrap();
        let full = main_capacitance(r.lookup("glass").unwrap(), 0.09, 0.01).unwrap();
        assert_eq!(full, 2.0 * half);

        assert!(main_capacitance(r.lookup("air").unwrap(), 0.09, 0.0).is_err());
        assert!(main_capacitance(r.lookup("air").unwrap(), -1.0, 0.01).is_err());
    }

    #[test]
    fn ideal_pi_halves() {
        let pi = ideal_pi(100e-12).unwrap();
        assert_eq!((pi.c_p, pi.c_s, pi.c_m), (50e-12, 50e-12, 50e-12));
        let air = main_capacitance(reg().lookup("air").unwrap(), 0.09, 0.01).unwrap();
        assert!((ideal_pi(air).unwrap().c_m - 40.08e-12).abs() < 0.005e-12);
        assert!(matches!(ideal_pi(0.0), Err(Error::NonPositiveCapacitance(_))));
    }

    #[test]
    fn sweep_rows() {
        let r = reg();
        let d = [0.001, 0.01, 0.1];
        let air = analytic_sweep(r.lookup("air").unwrap(), 0.3, &d).unwrap();
        let water = analytic_sweep(r.lookup("water").unwrap(), 0.3, &d).unwrap();
        for (a, w) in air.iter().zip(&water) {
            assert!((w.c_m / a.c_m - 79.633).abs() < 1e-3);
        }
        assert!(air.windows(2).all(|w| w[1].c_m < w[0].c_m));

        let single = analytic_sweep(r.lookup("brick").unwrap(), 0.3, &[0.02]).unwrap();
        let direct = ideal_pi(main_capacitance(r.lookup("brick").unwrap(), 0.09, 0.02).unwrap()).unwrap().c_m;
        assert_eq!(single[0].c_m, direct);

        assert!(analytic_sweep(r.lookup("air").unwrap(), 0.3, &[]).is_err());
        assert!(analytic_sweep(r.lookup("air").unwrap(), 0.3, &[0.01, -0.01]).is_err());
    }
}
