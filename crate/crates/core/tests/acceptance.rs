//! Acceptance gate: one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.

mod common;

use std::fs;
use std::time::{Duration, Instant};

use common::{check_invariants, load_voltage_mesh, pi_by_elimination, rel};
use cpt::analytic::{analytic_sweep, main_capacitance};
use cpt::circuit::{
    max_feasible_distance_ideal, operating_point, resonance_frequency, solve_ac, CircuitParams, Coupler,
};
use cpt::field_solver::{extract, reduce_pi, CapMatrix, NetworkCapacitances, PiModel};
use cpt::geometry::{mesh, CouplerGeometry};
use cpt::materials::{Material, MaterialRegistry};
use cpt::pipeline::{
    emit_figure_data, run, write_outputs, Distances, Figure, Source, SweepConfig, SweepResult,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const AREA: f64 = 0.09;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: String) -> Self {
        if failures.is_empty() {
            Outcome { pass: true, detail: summary }
        } else {
            Outcome { pass: false, detail: format!("{summary}; {}", failures.join("; ")) }
        }
    }
}

fn registry() -> MaterialRegistry {
    MaterialRegistry::builtin()
}

fn material(name: &str) -> Material {
    registry().lookup(name).unwrap().clone()
}

fn within_budget(failures: &mut Vec<String>, start: Instant, budget: Duration) -> Duration {
    let t = start.elapsed();
    if t > budget {
        failures.push(format!("took {t:.1?}, budget {budget:?}"));
    }
    t
}

/// Analytic medium ratios.
fn analytic_ratios() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let distances = Distances::default().values().unwrap();
    let sweep = |m: &str| analytic_sweep(&material(m), 0.3, &distances).unwrap();
    let (air, water) = (sweep("air"), sweep("water"));
    let mut worst: f64 = 0.0;
    for (a, w) in air.iter().zip(&water) {
        let r = w.c_m / a.c_m;
        worst = worst.max((r - 79.633).abs());
        if (r - 79.633).abs() > 1e-3 {
            failures.push(format!("water/air = {r:.5} at {} m", a.distance));
        }
    }
    let glass = analytic_sweep(&material("glass"), 0.3, &[0.01]).unwrap()[0].c_m;
    let air10 = analytic_sweep(&material("air"), 0.3, &[0.01]).unwrap()[0].c_m;
    let g = glass / air10;
    if (g - 7.555).abs() > 0.01 {
        failures.push(format!("glass/air = {g:.4} at 10 mm"));
    }
    let t = within_budget(&mut failures, start, Duration::from_secs(1));
    Outcome::new(
        failures,
        format!("water/air max deviation {worst:.1e} over 25 distances, glass/air {g:.4} at 10 mm, {t:.1?}"),
    )
}

/// Pi reduction against nodal elimination.
fn pi_oracle() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let mut c = || 10f64.powf(rng.random_range(-13.0..-8.0));
        let net = NetworkCapacitances { c12: c(), c13: c(), c14: c(), c23: c(), c24: c(), c34: c() };
        let pi = reduce_pi(&net).unwrap();
        let (c_p, c_s, c_m) = pi_by_elimination(&net);
        let scale = pi.c_p.max(pi.c_s);
        let err = rel(pi.c_p, c_p).max(rel(pi.c_s, c_s)).max((pi.c_m - c_m).abs() / scale);
        worst = worst.max(err);
    }
    if worst > 1e-9 {
        failures.push(format!("max relative error {worst:.2e}"));
    }
    let c = 100e-12;
    let ideal = reduce_pi(&NetworkCapacitances::ideal(c)).unwrap();
    if [ideal.c_p, ideal.c_s, ideal.c_m] != [c / 2.0; 3] {
        failures.push(format!("symmetric case gave {ideal:?}"));
    }
    let t = within_budget(&mut failures, start, Duration::from_secs(10));
    Outcome::new(
        failures,
        format!("10000 random networks, max relative error {worst:.2e}; symmetric case C/2; {t:.1?}"),
    )
}

/// Field-solver validation; `extractions` collects every matrix for the
/// invariant check.
fn field_solver(extractions: &mut Vec<(String, CapMatrix)>) -> Outcome {
    let mut failures = Vec::new();
    let homogeneous = |d: f64| CouplerGeometry::standard(0.3, d).unwrap().with_slab(false);

    // (a) homogeneous scaling
    let m10 = mesh(&homogeneous(0.01), 16).unwrap();
    let unit = extract(&m10, &Material::new("unit", 1.0).unwrap()).unwrap();
    let hi = extract(&m10, &Material::new("hi", 80.103).unwrap()).unwrap();
    let scaling = (0..16)
        .map(|k| rel(hi.maxwell_row_major()[k], 80.103 * unit.maxwell_row_major()[k]))
        .fold(0.0, f64::max);
    if scaling > 1e-9 {
        failures.push(format!("(a) scaling error {scaling:.2e}"));
    }
    extractions.push(("unit 10 mm".into(), unit));
    extractions.push(("80.103 10 mm".into(), hi));

    // (b) refinement 16 -> 32
    let air = material("air");
    let c16 = extract(&m10, &air).unwrap();
    let c32 = extract(&mesh(&homogeneous(0.01), 32).unwrap(), &air).unwrap();
    let change = rel(c16.network.c13, c32.network.c13);
    if change >= 0.02 {
        failures.push(format!("(b) C13 changed {:.2} %", 100.0 * change));
    }

    // (d) fringing excess over the parallel-plate value
    let mut excess = Vec::new();
    for d in [0.001, 0.0025, 0.005, 0.01, 0.025] {
        let c =
            if d == 0.01 { c16.clone() } else { extract(&mesh(&homogeneous(d), 16).unwrap(), &air).unwrap() };
        let ratio = c.network.c13 / main_capacitance(&air, AREA, d).unwrap();
        if !(1.0..=1.3).contains(&ratio) {
            failures.push(format!("(d) C13 / parallel-plate = {ratio:.4} at {d} m"));
        }
        excess.push(format!("{:.1}%", 100.0 * (ratio - 1.0)));
        extractions.push((format!("air {d} m"), c));
    }
    extractions.push(("air 10 mm n32".into(), c32));

    Outcome::new(
        failures,
        format!(
            "(a) scaling error {scaling:.1e}; (b) C13 change 16->32 {:.2} %; (d) excess {}",
            100.0 * change,
            excess.join(" ")
        ),
    )
}

fn invariants(extractions: &[(String, CapMatrix)]) -> Outcome {
    let failures: Vec<String> = extractions
        .iter()
        .filter_map(|(name, c)| check_invariants(c).err().map(|e| format!("{name}: {e}")))
        .collect();
    let worst_recip = extractions.iter().map(|(_, c)| c.reciprocity_error).fold(0.0, f64::max);
    let min_eig = extractions.iter().map(|(_, c)| c.min_eigen_ratio()).fold(f64::INFINITY, f64::min);
    Outcome::new(
        failures,
        format!(
            "(c) {} extractions, max reciprocity error {worst_recip:.1e}, min eigenvalue ratio {min_eig:.1e}",
            extractions.len()
        ),
    )
}

fn field_rows<'a>(sweep: &'a SweepResult, medium: &'a str) -> impl Iterator<Item = (f64, PiModel)> + 'a {
    sweep
        .rows
        .iter()
        .filter(move |r| r.source == Source::Field && r.medium == medium)
        .map(|r| (r.distance_m, r.pi.expect("field row solved")))
}

/// Slab-mode coupling coefficient behaviour.
fn coupling(sweep: &SweepResult) -> Outcome {
    let mut failures = Vec::new();
    if sweep.failed_rows() > 0 {
        failures.push(format!("{} rows failed", sweep.failed_rows()));
        return Outcome::new(failures, String::new());
    }
    let mut at_far = Vec::new();
    for m in ["air", "glass", "water"] {
        let ks: Vec<(f64, f64)> = field_rows(sweep, m).map(|(d, p)| (d, p.k_c)).collect();
        if let Some(w) = ks.windows(2).find(|w| w[1].1 >= w[0].1) {
            failures.push(format!("{m}: k_c not decreasing between {} and {} m", w[0].0, w[1].0));
        }
        if let Some((d, k)) = ks.iter().find(|(_, k)| *k > 1.0 + 1e-9 || *k < 0.0) {
            failures.push(format!("{m}: k_c = {k} at {d} m"));
        }
        at_far.push(ks.last().unwrap().1);
    }
    let (air, water) = (at_far[0], at_far[2]);
    if water >= air {
        failures.push(format!("k_c(water) = {water:.4} is not below k_c(air) = {air:.4} at 0.2 m"));
    }
    Outcome::new(
        failures,
        format!("k_c at 0.2 m: air {:.4}, glass {:.4}, water {:.4}", at_far[0], at_far[1], at_far[2]),
    )
}

/// Nodal analysis against mesh analysis, and the series-resonant gain.
fn circuit_oracle() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0xc1c);
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let params = CircuitParams {
            v_in: rng.random_range(1.0..1000.0),
            l_p: 10f64.powf(rng.random_range(-6.0..-2.0)),
            r_load: 10f64.powf(rng.random_range(0.0..4.0)),
            f_max: 1e6,
        };
        let mut c = || 10f64.powf(rng.random_range(-13.0..-8.0));
        let (c_p, c_s, c_m) = (c(), c(), c());
        let pi = PiModel { c_p, c_s, c_m, k_c: c_m / (c_p * c_s).sqrt() };
        let f = 10f64.powf(rng.random_range(2.0..7.0));
        let nodal = solve_ac(&params, &pi, f).unwrap().v_load;
        let mesh = load_voltage_mesh(&params, c_p, c_s, c_m, f);
        worst = worst.max((nodal - mesh).norm() / nodal.norm().max(mesh.norm()));
    }
    if worst > 1e-9 {
        failures.push(format!("max relative error {worst:.2e}"));
    }
    let params = CircuitParams::default();
    let c = 100e-12;
    let series = PiModel { c_p: 0.0, c_s: 0.0, c_m: c, k_c: 1.0 };
    let f = resonance_frequency(params.l_p, c).unwrap();
    let gain = solve_ac(&params, &series, f).unwrap().gain;
    if (gain - 1.0).abs() > 1e-9 {
        failures.push(format!("series-resonant gain {gain}"));
    }
    let t = within_budget(&mut failures, start, Duration::from_secs(5));
    Outcome::new(
        failures,
        format!("1000 networks, max relative error {worst:.2e}; series gain {gain:.9}; {t:.1?}"),
    )
}

/// Resonance-frequency feasibility limits.
fn feasibility(sweep: &SweepResult) -> Outcome {
    let mut failures = Vec::new();
    let params = CircuitParams::default();
    let (air, water) = (material("air"), material("water"));
    let op = |m: &Material, d: f64| {
        operating_point(&params, &Coupler::ideal(main_capacitance(m, AREA, d).unwrap()).unwrap()).unwrap()
    };

    let horizon = max_feasible_distance_ideal(&air, AREA, &params).unwrap();
    if (horizon - 3.2e-3).abs() > 0.1e-3 {
        failures.push(format!("air horizon {:.3} mm", horizon * 1e3));
    }
    if !op(&air, horizon * (1.0 - 1e-9)).feasible || op(&air, horizon * (1.0 + 1e-6)).feasible {
        failures.push("air horizon does not separate feasible from infeasible".into());
    }

    let w = op(&water, 0.2);
    if !w.feasible || (w.f_res - 891e3).abs() > 2e3 {
        failures.push(format!("water at 0.2 m: f_res {:.1} kHz, feasible {}", w.f_res / 1e3, w.feasible));
    }
    let ratio = op(&air, 0.01).f_res / op(&water, 0.01).f_res;
    if (ratio - 8.92).abs() > 0.01 {
        failures.push(format!("ideal f_res(air)/f_res(water) = {ratio:.4}"));
    }

    let f_res = |m: &str| -> Vec<f64> {
        sweep
            .rows
            .iter()
            .filter(|r| r.source == Source::Field && r.medium == m)
            .map(|r| r.circuit.unwrap().f_res)
            .collect()
    };
    let field: Vec<f64> = f_res("air").iter().zip(f_res("water")).map(|(a, w)| a / w).collect();
    let (lo, hi) = field.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    if !(lo >= 8.5 && hi <= 13.0) {
        failures.push(format!("field f_res ratio spans [{lo:.3}, {hi:.3}]"));
    }
    Outcome::new(
        failures,
        format!(
            "air horizon {:.3} mm; water 0.2 m f_res {:.1} kHz; ideal ratio {ratio:.4}; field ratio [{lo:.3}, {hi:.3}]",
            horizon * 1e3,
            w.f_res / 1e3
        ),
    )
}

/// Output power ordering across media.
fn power_ordering(sweep: &SweepResult) -> Outcome {
    let mut failures = Vec::new();
    let mut peaks = Vec::new();
    for source in [Source::Analytic, Source::Field] {
        let p = |m: &str| -> Vec<(f64, f64)> {
            sweep
                .rows
                .iter()
                .filter(|r| r.source == source && r.medium == m)
                .map(|r| (r.distance_m, r.circuit.unwrap().p_out))
                .collect()
        };
        let (air, glass, water) = (p("air"), p("glass"), p("water"));
        for ((a, g), w) in air.iter().zip(&glass).zip(&water) {
            if g.1 < a.1 || w.1 < a.1 {
                failures.push(format!(
                    "{} at {} m: air {:.2} W, glass {:.2} W, water {:.2} W",
                    source.name(),
                    a.0,
                    a.1,
                    g.1,
                    w.1
                ));
            }
        }
        let peak = |v: &[(f64, f64)]| v.iter().map(|x| x.1).fold(0.0, f64::max);
        let (pa, pg, pw) = (peak(&air), peak(&glass), peak(&water));
        if !(pg > pa && pw > pa) {
            failures
                .push(format!("{} peaks: air {pa:.2} W, glass {pg:.2} W, water {pw:.2} W", source.name()));
        }
        peaks.push(format!("{} peaks air {pa:.1} W, glass {pg:.1} W, water {pw:.1} W", source.name()));
    }
    Outcome::new(failures, peaks.join("; "))
}

/// Byte-identical reruns and both curve families for fig5.
fn determinism() -> Outcome {
    let mut failures = Vec::new();
    let cfg = SweepConfig::from_json(
        r#"{"media": ["air", "glass", "water"],
            "distances": {"start_m": 0.001, "stop_m": 0.2, "points": 5, "spacing": "log"},
            "geometry": {"refinement": 8}}"#,
    )
    .unwrap();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut contents = Vec::new();
    for d in &dirs {
        let res = run(&cfg, &registry()).unwrap();
        let mut files: Vec<(String, Vec<u8>)> = write_outputs(&res, d.path(), &Figure::ALL, true)
            .unwrap()
            .into_iter()
            .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
            .collect();
        files.sort();
        contents.push(files);
    }
    if contents[0] != contents[1] {
        failures.push("outputs differ between runs".into());
    }
    let res = run(&cfg, &registry()).unwrap();
    let fig5 = emit_figure_data(&res.rows, Figure::Fig5, dirs[0].path()).unwrap();
    let names: Vec<String> =
        fig5.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    for m in ["air", "glass", "water"] {
        for s in ["analytic", "field"] {
            let n = format!("fig5_{m}_{s}.csv");
            if !names.contains(&n) {
                failures.push(format!("{n} missing"));
            }
        }
    }
    Outcome::new(
        failures,
        format!("{} files identical across two runs; fig5 files {}", contents[0].len(), names.len()),
    )
}

fn main() {
    let start = Instant::now();
    let mut outcomes: Vec<(u8, Outcome)> = Vec::new();
    let report = |n: u8, o: &Outcome| {
        println!("criterion {n}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    };

    let o = analytic_ratios();
    report(1, &o);
    outcomes.push((1, o));
    let o = pi_oracle();
    report(2, &o);
    outcomes.push((2, o));

    // Default sweep: air, glass and water over 25 log-spaced distances.
    let sweep = run(&SweepConfig::default(), &registry()).unwrap();
    let mut extractions = Vec::new();
    let o = field_solver(&mut extractions);
    let sweep_matrices = sweep.rows.iter().filter(|r| r.source == Source::Field).count();
    // Every slab-mode extraction of the sweep is re-checked for the invariants.
    for r in sweep.rows.iter().filter(|r| r.source == Source::Field) {
        let geom = SweepConfig::default().geometry.at(r.distance_m).unwrap();
        let c = extract(&mesh(&geom, 16).unwrap(), &material(&r.medium)).unwrap();
        extractions.push((format!("{} {} m slab", r.medium, r.distance_m), c));
    }
    let inv = invariants(&extractions);
    let o = Outcome {
        pass: o.pass && inv.pass,
        detail: format!("{}; {} (includes {sweep_matrices} slab sweep points)", o.detail, inv.detail),
    };
    report(3, &o);
    outcomes.push((3, o));

    let o = coupling(&sweep);
    report(4, &o);
    outcomes.push((4, o));
    let o = circuit_oracle();
    report(5, &o);
    outcomes.push((5, o));
    let o = feasibility(&sweep);
    report(6, &o);
    outcomes.push((6, o));
    let o = power_ordering(&sweep);
    report(7, &o);
    outcomes.push((7, o));
    let o = determinism();
    report(8, &o);
    outcomes.push((8, o));

    let failed: Vec<String> = outcomes.iter().filter(|(_, o)| !o.pass).map(|(n, _)| n.to_string()).collect();
    println!("acceptance finished in {:.1?}", start.elapsed());
    if failed.is_empty() {
        println!("all criteria passed");
    } else {
        println!("failed criteria: {}", failed.join(", "));
        std::process::exit(1);
    }
}
