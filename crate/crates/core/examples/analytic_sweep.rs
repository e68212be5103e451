//! Parallel-plate mutual capacitance of 30 cm plates from 1 mm to 20 cm.

use cpt::analytic::analytic_sweep;
use cpt::materials::MaterialRegistry;
use cpt::pipeline::Distances;

pub fn main() -> cpt::Result<()> {
    let registry = MaterialRegistry::builtin();
    let distances = "0.001:0.2:8:log".parse::<Distances>()?.values()?;

    print!("{:>10}", "d [mm]");
    let media = ["air", "glass", "water"];
    for m in media {
        print!("{:>14}", format!("{m} c_m [pF]"));
    }
    println!();

    let sweeps = media
        .iter()
        .map(|m| analytic_sweep(registry.lookup(m)?, 0.3, &distances))
        .collect::<cpt::Result<Vec<_>>>()?;
    for (i, d) in distances.iter().enumerate() {
        print!("{:>10.2}", d * 1e3);
        for s in &sweeps {
            print!("{:>14.3}", s[i].c_m * 1e12);
        }
        println!();
    }

    let ratio = sweeps[2][0].c_m / sweeps[0][0].c_m;
    println!("\nwater / air = {ratio:.3} at every distance");
    Ok(())
}
