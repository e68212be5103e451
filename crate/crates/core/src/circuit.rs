//! Steady-state phasor analysis of the series-inductor resonant link.
//!
//! ```text
//!  v_in ──L_p──A────C_m────B──┬──
//!              │           │  │
//!             C_p         C_s R_load
//!              │           │  │
//!  return ─────┴───────────┴──┴──
//! ```
//!
//! The link is tuned to `1 / (2π sqrt(L_p C))`, where `C` is the series
//! combination of the two facing capacitances. Operating points above
//! `f_max` are treated as unable to transfer power.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::VACUUM_PERMITTIVITY;
use crate::error::{Error, Result};
use crate::field_solver::{reduce_pi, NetworkCapacitances, PiModel};
use crate::materials::Material;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    /// Source amplitude, volts.
    pub v_in: f64,
    /// Series inductance, henries.
    pub l_p: f64,
    /// Load resistance, ohms.
    pub r_load: f64,
    /// Highest usable resonance frequency, hertz.
    pub f_max: f64,
}

impl Default for CircuitParams {
    fn default() -> Self {
        Self { v_in: 400.0, l_p: 200e-6, r_load: 500.0, f_max: 1e6 }
    }
}

fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositiveInput { what, value })
    }
}

impl CircuitParams {
    pub fn validate(&self) -> Result<()> {
        positive("v_in", self.v_in)?;
        positive("l_p", self.l_p)?;
        positive("r_load", self.r_load)?;
        positive("f_max", self.f_max)?;
        Ok(())
    }
}

/// Coupler as seen by the circuit: the raw pairwise capacitances (for the
/// tuning capacitance) and their Pi reduction (for the network).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupler {
    pub network: NetworkCapacitances,
    pub pi: PiModel,
}

impl Coupler {
    pub fn from_network(network: NetworkCapacitances) -> Result<Self> {
        Ok(Self { network, pi: reduce_pi(&network)? })
    }

    /// Ideally coupled plates with facing capacitance `c_main`.
    pub fn ideal(c_main: f64) -> Result<Self> {
        if !(c_main.is_finite() && c_main > 0.0) {
            return Err(Error::NonPositiveCapacitance(c_main));
        }
        Self::from_network(NetworkCapacitances::ideal(c_main))
    }
}

pub fn resonance_frequency(l_p: f64, c_total: f64) -> Result<f64> {
    positive("inductance", l_p)?;
    positive("capacitance", c_total)?;
    Ok(1.0 / (2.0 * PI * (l_p * c_total).sqrt()))
}

/// Series combination of the facing capacitances C13 and C24.
pub fn total_capacitance(net: &NetworkCapacitances) -> Result<f64> {
    let sum = net.c13 + net.c24;
    if sum.is_nan() || sum <= 0.0 {
        return Err(Error::DegenerateCoupler(sum));
    }
    Ok(net.c13 * net.c24 / sum)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcSolution {
    pub frequency: f64,
    pub v_load: Complex64,
    pub i_source: Complex64,
    /// `|V_load| / v_in`.
    pub gain: f64,
    /// Average load power `|V_load|² / (2 R)`, watts.
    pub p_out: f64,
}

/// Nodal solution of the link at frequency `f`.
pub fn solve_ac(params: &CircuitParams, pi: &PiModel, f: f64) -> Result<AcSolution> {
    params.validate()?;
    positive("frequency", f)?;
    let w = 2.0 * PI * f;
    let j = Complex64::i();
    let y_l = 1.0 / (j * w * params.l_p);
    let y_p = j * w * pi.c_p;
    let y_m = j * w * pi.c_m;
    let y_s = j * w * pi.c_s;
    let g = Complex64::new(1.0 / params.r_load, 0.0);

    let a11 = y_l + y_p + y_m;
    let a22 = y_m + y_s + g;
    let det = a11 * a22 - y_m * y_m;
    if !det.is_finite() || det.norm() == 0.0 {
        return Err(Error::SingularNetwork(f));
    }
    let src = y_l * params.v_in;
    let v_a = src * a22 / det;
    let v_b = src * y_m / det;
    let i_source = (params.v_in - v_a) * y_l;

    let amp = v_b.norm();
    Ok(AcSolution {
        frequency: f,
        v_load: v_b,
        i_source,
        gain: amp / params.v_in,
        p_out: amp * amp / (2.0 * params.r_load),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatingPoint {
    pub f_res: f64,
    pub feasible: bool,
    /// Watts; zero when infeasible.
    pub p_out: f64,
    pub v_load_amplitude: f64,
    pub gain: f64,
}

/// Tunes the link to the coupler and evaluates it there.
pub fn operating_point(params: &CircuitParams, coupler: &Coupler) -> Result<OperatingPoint> {
    params.validate()?;
    let f_res = resonance_frequency(params.l_p, total_capacitance(&coupler.network)?)?;
    if f_res > params.f_max {
        return Ok(OperatingPoint { f_res, feasible: false, p_out: 0.0, v_load_amplitude: 0.0, gain: 0.0 });
    }
    let ac = solve_ac(params, &coupler.pi, f_res)?;
    Ok(OperatingPoint {
        f_res,
        feasible: true,
        p_out: ac.p_out,
        v_load_amplitude: ac.v_load.norm(),
        gain: ac.gain,
    })
}

/// Largest plate distance at which an ideally coupled pair of plates of
/// `area` still resonates at or below `f_max`.
pub fn max_feasible_distance_ideal(medium: &Material, area: f64, params: &CircuitParams) -> Result<f64> {
    params.validate()?;
    positive("area", area)?;
    let c_required = 1.0 / (4.0 * PI * PI * params.f_max * params.f_max * params.l_p);
    // Series pair of eps0 eps_r A / d capacitors.
    Ok(VACUUM_PERMITTIVITY * medium.eps_r * area / (2.0 * c_required))
}

/// Frequency in `[f_lo, f_hi]` that maximises load power: logarithmic scan
/// followed by golden-section refinement. Returns `(frequency, p_out)`.
pub fn peak_power_frequency(
    params: &CircuitParams,
    pi: &PiModel,
    f_lo: f64,
    f_hi: f64,
) -> Result<(f64, f64)> {
    positive("f_lo", f_lo)?;
    positive("f_hi", f_hi)?;
    if f_hi <= f_lo {
        return Err(Error::Config(format!("empty frequency range [{f_lo}, {f_hi}]")));
    }
    const SCAN: usize = 2_000;
    let power = |log_f: f64| solve_ac(params, pi, log_f.exp()).map(|s| s.p_out);
    let (lo, hi) = (f_lo.ln(), f_hi.ln());
    let step = (hi - lo) / (SCAN - 1) as f64;
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..SCAN {
        let p = power(lo + step * i as f64)?;
        if p > best.1 {
            best = (i, p);
        }
    }
    let mut a = lo + step * best.0.saturating_sub(1) as f64;
    let mut b = (lo + step * (best.0 + 1) as f64).min(hi);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut pc, mut pd) = (power(c)?, power(d)?);
    while b - a > 1e-12 {
        if pc > pd {
            b = d;
            d = c;
            pd = pc;
            c = b - ratio * (b - a);
            pc = power(c)?;
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + ratio * (b - a);
            pd = power(d)?;
        }
    }
    let f = (0.5 * (a + b)).exp();
    let p = solve_ac(params, pi, f)?.p_out;
    if p >= best.1 {
        Ok((f, p))
    } else {
        Ok(((lo + step * best.0 as f64).exp(), best.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::MaterialRegistry;

    const PF: f64 = 1e-12;

    #[test]
    fn resonance_examples() {
        let f = resonance_frequency(200e-6, 400.8 * PF).unwrap();
        assert!((f - 561.9e3).abs() < 0.5e3, "{f}");
        let f = resonance_frequency(200e-6, 159.6 * PF).unwrap();
        assert!((f - 890.7e3).abs() < 1e3, "{f}");
        let f1 = resonance_frequency(200e-6, 10.0 * PF).unwrap();
        let f4 = resonance_frequency(200e-6, 40.0 * PF).unwrap();
        assert!((f1 / f4 - 2.0).abs() < 1e-14);
        assert!(matches!(resonance_frequency(0.0, 1.0), Err(Error::NonPositiveInput { .. })));
        assert!(resonance_frequency(1.0, -1.0).is_err());
    }

    #[test]
    fn series_total_capacitance() {
        let eq = NetworkCapacitances::ideal(801.6 * PF);
        assert!((total_capacitance(&eq).unwrap() - 400.8 * PF).abs() < 1e-20);
        let uneq = NetworkCapacitances { c13: 100.0 * PF, c24: 50.0 * PF, ..Default::default() };
        assert!((total_capacitance(&uneq).unwrap() / PF - 100.0 / 3.0).abs() < 1e-9);
        assert!(total_capacitance(&NetworkCapacitances::default()).is_err());
        let ideal = Coupler::ideal(123.0 * PF).unwrap();
        assert!((total_capacitance(&ideal.network).unwrap() - ideal.pi.c_m).abs() < 1e-24);
    }

    #[test]
    fn pure_series_resonance_has_unity_gain() {
        let params = CircuitParams::default();
        let c_m = 40.08 * PF;
        let pi = PiModel { c_p: 0.0, c_s: 0.0, c_m, k_c: 1.0 };
        let f = resonance_frequency(params.l_p, c_m).unwrap();
        let ac = solve_ac(&params, &pi, f).unwrap();
        assert!((ac.gain - 1.0).abs() < 1e-9);
        assert!((ac.p_out - 160.0).abs() < 1e-6);
    }

    #[test]
    fn dc_is_blocked() {
        let params = CircuitParams::default();
        let pi = PiModel { c_p: 40e-12, c_s: 40e-12, c_m: 40e-12, k_c: 1.0 };
        let p = solve_ac(&params, &pi, 1e-3).unwrap().p_out;
        assert!(p < 1e-12, "{p}");
        assert!(solve_ac(&params, &pi, 0.0).is_err());
    }

    #[test]
    fn feasibility_limit() {
        let reg = MaterialRegistry::builtin();
        let air = reg.lookup("air").unwrap();
        let params = CircuitParams::default();
        let c10 = crate::analytic::main_capacitance(air, 0.09, 0.01).unwrap();
        let op = operating_point(&params, &Coupler::ideal(c10).unwrap()).unwrap();
        assert!((op.f_res - 1.778e6).abs() < 1e3, "{}", op.f_res);
        assert!(!op.feasible);
        assert_eq!(op.p_out, 0.0);

        let c1 = crate::analytic::main_capacitance(air, 0.09, 0.001).unwrap();
        let op = operating_point(&params, &Coupler::ideal(c1).unwrap()).unwrap();
        assert!((op.f_res - 562e3).abs() < 1e3);
        assert!(op.feasible && op.p_out > 0.0);
        assert!((op.p_out - op.v_load_amplitude.powi(2) / (2.0 * params.r_load)).abs() < 1e-9);
    }

    #[test]
    fn boundary_frequency_is_feasible() {
        let c_m = 50.0 * PF;
        let coupler = Coupler::ideal(2.0 * c_m).unwrap();
        let f = resonance_frequency(200e-6, c_m).unwrap();
        let params = CircuitParams { f_max: f, ..Default::default() };
        assert!(operating_point(&params, &coupler).unwrap().feasible);
    }

    #[test]
    fn ideal_horizon() {
        let reg = MaterialRegistry::builtin();
        let params = CircuitParams::default();
        let d = max_feasible_distance_ideal(reg.lookup("air").unwrap(), 0.09, &params).unwrap();
        assert!((d - 3.2e-3).abs() < 0.1e-3, "{d}");
    }

    #[test]
    fn peak_frequency_beats_scan_neighbours() {
        let params = CircuitParams::default();
        let pi = PiModel { c_p: 400e-12, c_s: 400e-12, c_m: 400e-12, k_c: 1.0 };
        let (f, p) = peak_power_frequency(&params, &pi, 1e5, 5e6).unwrap();
        for g in [f * 0.999, f * 1.001] {
            assert!(solve_ac(&params, &pi, g).unwrap().p_out <= p + 1e-9);
        }
    }
}
