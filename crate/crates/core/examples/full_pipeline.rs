//! End-to-end sweep: analytic and field-solver capacitances, circuit
//! operating points, CSV tables and figure data.

use cpt::materials::MaterialRegistry;
use cpt::pipeline::{run, write_outputs, Figure, SweepConfig};

pub fn main() -> cpt::Result<()> {
    let config = SweepConfig::from_json(
        r#"{
            "media": ["air", "glass", "water"],
            "distances": {"start_m": 0.002, "stop_m": 0.2, "points": 4, "spacing": "log"},
            "geometry": {"plate_side_m": 0.3, "refinement": 6},
            "circuit": {"v_in_v": 400, "l_p_h": 200e-6, "r_load_ohm": 500, "f_max_hz": 1e6}
        }"#,
    )?;
    let result = run(&config, &MaterialRegistry::builtin())?;

    println!(
        "{:<6} {:>7} {:<8} {:>10} {:>7} {:>10} {:>9}",
        "medium", "d [mm]", "source", "c_m [pF]", "k_c", "f [kHz]", "P [W]"
    );
    for r in &result.rows {
        let (Some(pi), Some(op)) = (r.pi, r.circuit) else {
            println!(
                "{:<6} {:>7.1} {:<8} failed: {}",
                r.medium,
                r.distance_m * 1e3,
                r.source.name(),
                r.error.as_deref().unwrap_or("")
            );
            continue;
        };
        println!(
            "{:<6} {:>7.1} {:<8} {:>10.3} {:>7.4} {:>10.1} {:>9.1}",
            r.medium,
            r.distance_m * 1e3,
            r.source.name(),
            pi.c_m * 1e12,
            pi.k_c,
            op.f_res / 1e3,
            op.p_out
        );
    }

    let dir = std::env::temp_dir().join("cpt-full-pipeline");
    let files = write_outputs(&result, &dir, &Figure::ALL, true)?;
    println!("\nwrote {} files to {}", files.len(), dir.display());
    Ok(())
}
