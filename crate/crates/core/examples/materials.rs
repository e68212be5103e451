//! Lists the built-in media and adds user-defined ones.

use cpt::materials::{Material, MaterialRegistry};

pub fn main() -> cpt::Result<()> {
    let registry = MaterialRegistry::builtin()
        .register(Material::new("ice", 3.2)?)?
        .with_json(r#"[{"name": "pvc", "eps_r": 3.4}]"#)?;

    println!("{:<10} {:>9}", "medium", "eps_r");
    for m in registry.entries() {
        println!("{:<10} {:>9.4}", m.name, m.eps_r);
    }

    // Lookups ignore case; unknown names list what is available.
    println!("\nWATER -> {}", registry.lookup("WATER")?.eps_r);
    if let Err(e) = registry.lookup("mercury") {
        println!("{e}");
    }
    Ok(())
}
