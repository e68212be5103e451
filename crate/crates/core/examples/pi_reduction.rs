//! Reducing six plate-to-plate capacitances to a Pi-model.

use cpt::field_solver::{reduce_pi, NetworkCapacitances};

const PF: f64 = 1e-12;

pub fn main() -> cpt::Result<()> {
    let cases = [
        ("ideal", NetworkCapacitances::ideal(100.0 * PF)),
        (
            "cross-coupled",
            NetworkCapacitances {
                c13: 100.0 * PF,
                c24: 80.0 * PF,
                c14: 10.0 * PF,
                c23: 10.0 * PF,
                ..Default::default()
            },
        ),
        (
            "balanced bridge",
            NetworkCapacitances {
                c12: 5.0 * PF,
                c13: 7.0 * PF,
                c14: 7.0 * PF,
                c23: 7.0 * PF,
                c24: 7.0 * PF,
                c34: 5.0 * PF,
            },
        ),
    ];
    println!("{:<16} {:>9} {:>9} {:>9} {:>7}", "network", "c_p [pF]", "c_s [pF]", "c_m [pF]", "k_c");
    for (name, net) in cases {
        let pi = reduce_pi(&net)?;
        println!(
            "{:<16} {:>9.2} {:>9.2} {:>9.2} {:>7.4}",
            name,
            pi.c_p / PF,
            pi.c_s / PF,
            pi.c_m / PF,
            pi.k_c
        );
    }
    Ok(())
}
