//! Boundary-element extraction of the four-plate Maxwell matrix with a glass
//! slab in a 10 mm gap.

use cpt::field_solver::extract;
use cpt::geometry::{mesh, CouplerGeometry};
use cpt::materials::MaterialRegistry;

pub fn main() -> cpt::Result<()> {
    let glass = MaterialRegistry::builtin().lookup("glass")?.clone();
    let geometry = CouplerGeometry::standard(0.3, 0.01)?;
    let panels = mesh(&geometry, 12)?;
    println!("{} panels ({} on plates)", panels.len(), panels.conductor_panels().count());

    let c = extract(&panels, &glass)?;
    println!("\nMaxwell matrix [pF]:");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:>10.3}", c.maxwell[(i, j)] * 1e12)).collect();
        println!("{}", row.join(""));
    }

    let n = c.network;
    println!("\nfacing   C13 = {:.3} pF, C24 = {:.3} pF", n.c13 * 1e12, n.c24 * 1e12);
    println!("cross    C14 = {:.3} pF, C23 = {:.3} pF", n.c14 * 1e12, n.c23 * 1e12);
    println!("leakage  C12 = {:.3} pF, C34 = {:.3} pF", n.c12 * 1e12, n.c34 * 1e12);
    println!(
        "solve: {:?}, reciprocity error {:.1e}, min eigenvalue ratio {:.2e}",
        c.method,
        c.reciprocity_error,
        c.min_eigen_ratio()
    );
    Ok(())
}
