//! Series-inductor resonant link through an ideally coupled plate pair:
//! operating point versus distance and the frequency response around
//! resonance.

use cpt::analytic::main_capacitance;
use cpt::circuit::{max_feasible_distance_ideal, operating_point, solve_ac, CircuitParams, Coupler};
use cpt::materials::MaterialRegistry;

pub fn main() -> cpt::Result<()> {
    let registry = MaterialRegistry::builtin();
    let params = CircuitParams::default();
    let area = 0.09;

    for name in ["air", "water"] {
        let medium = registry.lookup(name)?;
        let horizon = max_feasible_distance_ideal(medium, area, &params)?;
        println!("{name}: resonance stays below {:.0} kHz up to {:.2} mm", params.f_max / 1e3, horizon * 1e3);
        for d in [0.002, 0.01, 0.05, 0.2] {
            let coupler = Coupler::ideal(main_capacitance(medium, area, d)?)?;
            let op = operating_point(&params, &coupler)?;
            println!(
                "  d = {:>5.1} mm  f_res = {:>9.1} kHz  {:<10} p_out = {:>8.1} W",
                d * 1e3,
                op.f_res / 1e3,
                if op.feasible { "feasible" } else { "too fast" },
                op.p_out
            );
        }
    }

    let coupler = Coupler::ideal(main_capacitance(registry.lookup("water")?, area, 0.2)?)?;
    let f_res = operating_point(&params, &coupler)?.f_res;
    println!("\nwater, 20 cm: response around f_res");
    for k in [0.8, 0.9, 1.0, 1.1, 1.2] {
        let ac = solve_ac(&params, &coupler.pi, k * f_res)?;
        println!("  {:>7.1} kHz  gain {:>6.3}  p_out {:>8.1} W", ac.frequency / 1e3, ac.gain, ac.p_out);
    }
    Ok(())
}
