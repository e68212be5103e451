//! Media × distance sweeps through the analytic, field and circuit stages,
//! plus every file the toolkit writes.
//!
//! For each `(medium, distance)` pair an analytic row is always produced,
//! followed by a field row when the field stage is enabled. Circuit results
//! are attached to whichever rows carry capacitances. Rows keep the input
//! order regardless of how the field solves are scheduled.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::main_capacitance;
use crate::circuit::{operating_point, CircuitParams, Coupler, OperatingPoint};
use crate::error::{Error, Result};
use crate::field_solver::{extract_with, NetworkCapacitances, PiModel, SolverOptions};
use crate::geometry::{mesh_with_budget, CouplerGeometry};
use crate::materials::{Material, MaterialRegistry};

pub const CSV_HEADER: &str =
    "medium,distance_m,source,c13_f,c24_f,c12_f,c34_f,c14_f,c23_f,c_p_f,c_s_f,c_m_f,k_c,f_res_hz,feasible,p_out_w";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Analytic,
    Field,
    Circuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Explicit distances or an evenly spaced range, metres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Distances {
    List(Vec<f64>),
    Range {
        start_m: f64,
        stop_m: f64,
        points: usize,
        #[serde(default = "default_spacing")]
        spacing: Spacing,
    },
}

fn default_spacing() -> Spacing {
    Spacing::Log
}

impl Default for Distances {
    /// 1 mm to 20 cm, 25 log-spaced points.
    fn default() -> Self {
        Distances::Range { start_m: 1e-3, stop_m: 0.2, points: 25, spacing: Spacing::Log }
    }
}

impl Distances {
    pub fn values(&self) -> Result<Vec<f64>> {
        let v = match *self {
            Distances::List(ref v) => v.clone(),
            Distances::Range { start_m, stop_m, points, spacing } => {
                if !(start_m > 0.0 && stop_m.is_finite() && stop_m >= start_m) {
                    return Err(Error::Config(format!("bad distance range {start_m}..{stop_m}")));
                }
                match points {
                    0 => Vec::new(),
                    1 => vec![start_m],
                    n => {
                        let last = (n - 1) as f64;
                        (0..n)
                            .map(|i| {
                                let t = i as f64 / last;
                                match spacing {
                                    Spacing::Linear => start_m + t * (stop_m - start_m),
                                    Spacing::Log => start_m * (stop_m / start_m).powf(t),
                                }
                            })
                            .collect()
                    }
                }
            }
        };
        if v.is_empty() {
            return Err(Error::Config("no distances to sweep".into()));
        }
        if let Some(d) = v.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
            return Err(Error::Config(format!("distance {d} is not a positive length")));
        }
        Ok(v)
    }
}

impl std::str::FromStr for Distances {
    type Err = Error;

    /// `start:stop:points[:log|linear]` or a comma-separated list.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse distances `{s}`"));
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if !(3..=4).contains(&parts.len()) {
                return Err(bad());
            }
            let spacing = match parts.get(3).copied().unwrap_or("log") {
                "log" => Spacing::Log,
                "linear" | "lin" => Spacing::Linear,
                _ => return Err(bad()),
            };
            Ok(Distances::Range {
                start_m: parts[0].parse().map_err(|_| bad())?,
                stop_m: parts[1].parse().map_err(|_| bad())?,
                points: parts[2].parse().map_err(|_| bad())?,
                spacing,
            })
        } else {
            s.split(',')
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<Result<Vec<f64>>>()
                .map(Distances::List)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub plate_side_m: f64,
    /// Single distance used when no distance list is configured.
    pub gap_m: Option<f64>,
    /// Defaults to the plate side.
    pub side_spacing_m: Option<f64>,
    /// Defaults to a tenth of the plate side.
    pub slab_margin_m: Option<f64>,
    pub slab_enabled: bool,
    /// Panels along each plate edge.
    pub refinement: usize,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            plate_side_m: 0.3,
            gap_m: None,
            side_spacing_m: None,
            slab_margin_m: None,
            slab_enabled: true,
            refinement: 16,
        }
    }
}

impl GeometryConfig {
    /// Geometry at `gap`.
    pub fn at(&self, gap: f64) -> Result<CouplerGeometry> {
        let mut g = CouplerGeometry::standard(self.plate_side_m, gap)?;
        if let Some(s) = self.side_spacing_m {
            g.side_spacing = s;
        }
        if let Some(m) = self.slab_margin_m {
            g.slab_margin = m;
        }
        g.slab_enabled = self.slab_enabled;
        g.validate()?;
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CircuitConfig {
    pub v_in_v: f64,
    pub l_p_h: f64,
    pub r_load_ohm: f64,
    pub f_max_hz: f64,
}

impl Default for CircuitConfig {
    fn default() -> Self {
        let p = CircuitParams::default();
        Self { v_in_v: p.v_in, l_p_h: p.l_p, r_load_ohm: p.r_load, f_max_hz: p.f_max }
    }
}

impl From<CircuitConfig> for CircuitParams {
    fn from(c: CircuitConfig) -> Self {
        CircuitParams { v_in: c.v_in_v, l_p: c.l_p_h, r_load: c.r_load_ohm, f_max: c.f_max_hz }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub ambient_eps_r: f64,
    pub near_field_factor: f64,
    pub dense_limit: usize,
    pub panel_budget: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let o = SolverOptions::default();
        Self {
            ambient_eps_r: o.ambient_eps_r,
            near_field_factor: o.near_field_factor,
            dense_limit: o.dense_limit,
            panel_budget: o.panel_budget,
        }
    }
}

impl From<SolverConfig> for SolverOptions {
    fn from(c: SolverConfig) -> Self {
        SolverOptions {
            ambient_eps_r: c.ambient_eps_r,
            near_field_factor: c.near_field_factor,
            dense_limit: c.dense_limit,
            panel_budget: c.panel_budget,
            ..SolverOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    Fig5,
    Fig7,
    Fig9,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::Fig5, Figure::Fig7, Figure::Fig9];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig5 => "fig5",
            Figure::Fig7 => "fig7",
            Figure::Fig9 => "fig9",
        }
    }
}

impl std::str::FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fig5" => Ok(Figure::Fig5),
            "fig7" => Ok(Figure::Fig7),
            "fig9" => Ok(Figure::Fig9),
            other => Err(Error::Config(format!("unknown figure `{other}` (fig5, fig7, fig9)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub figures: Vec<Figure>,
    pub dump_matrices: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub media: Vec<String>,
    pub distances: Option<Distances>,
    pub geometry: GeometryConfig,
    pub circuit: CircuitConfig,
    pub solver: SolverConfig,
    pub stages: Vec<Stage>,
    pub output: OutputConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            media: vec!["air".into(), "glass".into(), "water".into()],
            distances: None,
            geometry: GeometryConfig::default(),
            circuit: CircuitConfig::default(),
            solver: SolverConfig::default(),
            stages: vec![Stage::Analytic, Stage::Field, Stage::Circuit],
            output: OutputConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| Error::Json { path: path.into(), source })
    }

    pub fn has(&self, stage: Stage) -> bool {
        self.stages.contains(&stage)
    }

    /// Distances in sweep order.
    pub fn distance_values(&self) -> Result<Vec<f64>> {
        match (&self.distances, self.geometry.gap_m) {
            (Some(d), _) => d.values(),
            (None, Some(g)) => Distances::List(vec![g]).values(),
            (None, None) => Distances::default().values(),
        }
    }

    /// Checks everything that can be checked without solving and resolves
    /// the media.
    pub fn validate(&self, registry: &MaterialRegistry) -> Result<Plan> {
        if self.media.is_empty() {
            return Err(Error::Config("no media to sweep".into()));
        }
        if self.stages.is_empty() {
            return Err(Error::Config("no stages selected".into()));
        }
        let media = self.media.iter().map(|m| registry.lookup(m).cloned()).collect::<Result<Vec<_>>>()?;
        let distances = self.distance_values()?;
        for &d in &distances {
            self.geometry.at(d)?;
        }
        if self.has(Stage::Field) && self.geometry.refinement == 0 {
            return Err(Error::Config("geometry.refinement must be at least 1".into()));
        }
        let circuit: CircuitParams = self.circuit.into();
        circuit.validate()?;
        let solver: SolverOptions = self.solver.into();
        if !(solver.ambient_eps_r.is_finite() && solver.ambient_eps_r > 0.0) {
            return Err(Error::InvalidPermittivity(solver.ambient_eps_r));
        }
        if !(solver.near_field_factor.is_finite() && solver.near_field_factor > 0.0) {
            return Err(Error::Config("solver.near_field_factor must be > 0".into()));
        }
        Ok(Plan { media, distances, config: self.clone(), circuit, solver })
    }
}

/// A validated sweep, ready to run.
#[derive(Debug, Clone)]
pub struct Plan {
    pub media: Vec<Material>,
    pub distances: Vec<f64>,
    pub config: SweepConfig,
    pub circuit: CircuitParams,
    pub solver: SolverOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Analytic,
    Field,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Analytic => "analytic",
            Source::Field => "field",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub medium: String,
    pub distance_m: f64,
    pub source: Source,
    /// `None` when the row failed.
    pub network: Option<NetworkCapacitances>,
    pub pi: Option<PiModel>,
    /// Row-major Maxwell matrix of field rows.
    pub maxwell: Option<[f64; 16]>,
    pub circuit: Option<OperatingPoint>,
    pub error: Option<String>,
}

impl SweepRow {
    fn new(medium: &Material, distance_m: f64, source: Source) -> Self {
        Self {
            medium: medium.name.clone(),
            distance_m,
            source,
            network: None,
            pi: None,
            maxwell: None,
            circuit: None,
            error: None,
        }
    }

    fn fail(mut self, e: Error) -> Self {
        self.error = Some(e.to_string());
        self
    }
}

/// Per-medium, per-source figures of merit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryEntry {
    pub medium: String,
    pub source: Source,
    /// Largest swept distance at which the link is feasible.
    pub max_feasible_distance_m: Option<f64>,
    pub peak_p_out_w: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub summary: Vec<SummaryEntry>,
}

impl SweepResult {
    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

fn analytic_row(plan: &Plan, medium: &Material, d: f64) -> SweepRow {
    let row = SweepRow::new(medium, d, Source::Analytic);
    let area = plan.config.geometry.plate_side_m.powi(2);
    let coupler = match main_capacitance(medium, area, d).and_then(Coupler::ideal) {
        Ok(c) => c,
        Err(e) => return row.fail(e),
    };
    with_coupler(plan, row, coupler)
}

fn field_row(plan: &Plan, medium: &Material, d: f64) -> SweepRow {
    let row = SweepRow::new(medium, d, Source::Field);
    let solved = plan
        .config
        .geometry
        .at(d)
        .and_then(|g| mesh_with_budget(&g, plan.config.geometry.refinement, plan.solver.panel_budget))
        .and_then(|m| extract_with(&m, medium, &plan.solver));
    let cap = match solved {
        Ok(c) => c,
        Err(e) => return row.fail(e),
    };
    let maxwell = cap.maxwell_row_major();
    match Coupler::from_network(cap.network) {
        Ok(coupler) => with_coupler(plan, SweepRow { maxwell: Some(maxwell), ..row }, coupler),
        Err(e) => SweepRow { maxwell: Some(maxwell), network: Some(cap.network), ..row }.fail(e),
    }
}

fn with_coupler(plan: &Plan, mut row: SweepRow, coupler: Coupler) -> SweepRow {
    row.network = Some(coupler.network);
    row.pi = Some(coupler.pi);
    if plan.config.has(Stage::Circuit) {
        match operating_point(&plan.circuit, &coupler) {
            Ok(op) => row.circuit = Some(op),
            Err(e) => return row.fail(e),
        }
    }
    row
}

fn summarize(plan: &Plan, rows: &[SweepRow]) -> Vec<SummaryEntry> {
    let mut out = Vec::new();
    for m in &plan.media {
        for source in [Source::Analytic, Source::Field] {
            let mine: Vec<&SweepRow> =
                rows.iter().filter(|r| r.medium == m.name && r.source == source).collect();
            if mine.is_empty() {
                continue;
            }
            let ops = || mine.iter().filter_map(|r| r.circuit.map(|c| (r.distance_m, c)));
            out.push(SummaryEntry {
                medium: m.name.clone(),
                source,
                max_feasible_distance_m: ops().filter(|(_, c)| c.feasible).map(|(d, _)| d).reduce(f64::max),
                peak_p_out_w: ops().map(|(_, c)| c.p_out).reduce(f64::max),
            });
        }
    }
    out
}

/// Validates `config` against `registry` and runs the sweep.
pub fn run(config: &SweepConfig, registry: &MaterialRegistry) -> Result<SweepResult> {
    let plan = config.validate(registry)?;
    Ok(run_plan(&plan))
}

/// Runs a validated sweep. Field solves run in parallel; row order follows
/// the media and distance order of the plan.
pub fn run_plan(plan: &Plan) -> SweepResult {
    let tasks: Vec<(&Material, f64)> =
        plan.media.iter().flat_map(|m| plan.distances.iter().map(move |&d| (m, d))).collect();
    let field: Vec<Option<SweepRow>> = if plan.config.has(Stage::Field) {
        tasks.par_iter().map(|&(m, d)| Some(field_row(plan, m, d))).collect()
    } else {
        vec![None; tasks.len()]
    };
    let rows: Vec<SweepRow> = tasks
        .iter()
        .zip(field)
        .flat_map(|(&(m, d), f)| std::iter::once(analytic_row(plan, m, d)).chain(f))
        .collect();
    SweepResult { summary: summarize(plan, &rows), rows }
}

fn sci(x: f64) -> String {
    format!("{x:.8e}")
}

/// Writes the sweep table. An `error` column is appended only when some row
/// failed.
pub fn write_csv<W: Write>(rows: &[SweepRow], w: W) -> csv::Result<()> {
    let with_errors = rows.iter().any(|r| r.error.is_some());
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<&str> = CSV_HEADER.split(',').collect();
    if with_errors {
        header.push("error");
    }
    out.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.medium.clone(), sci(r.distance_m), r.source.name().to_string()];
        match (&r.network, &r.pi) {
            (Some(n), Some(p)) => {
                rec.extend([n.c13, n.c24, n.c12, n.c34, n.c14, n.c23, p.c_p, p.c_s, p.c_m, p.k_c].map(sci))
            }
            _ => rec.extend(std::iter::repeat_n(String::new(), 10)),
        }
        match r.circuit {
            Some(c) => rec.extend([sci(c.f_res), c.feasible.to_string(), sci(c.p_out)]),
            None => rec.extend(std::iter::repeat_n(String::new(), 3)),
        }
        if with_errors {
            rec.push(r.error.clone().unwrap_or_default());
        }
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub(crate) fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::io(path, std::io::Error::other(format!("{other:?}"))),
    }
}

/// Writes `header` and `records` to a new CSV file at `path`.
fn write_table(path: &Path, header: &[&str], records: &[Vec<String>]) -> Result<()> {
    let mut out = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    out.write_record(header).map_err(|e| csv_error(path, e))?;
    for r in records {
        out.write_record(r).map_err(|e| csv_error(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Writes the sweep table to `path`.
pub fn emit_csv(rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptySweep);
    }
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(rows, file).map_err(|e| csv_error(path, e))
}

/// One `distance_m,<value>` file per medium and source, named
/// `<figure>_<medium>_<source>.csv`. Failed rows are skipped. Returns the
/// paths written.
pub fn emit_figure_data(rows: &[SweepRow], figure: Figure, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let (column, sources, needed): (&str, &[Source], &'static str) = match figure {
        Figure::Fig5 => ("c_m_f", &[Source::Analytic, Source::Field], "capacitance"),
        Figure::Fig7 => ("k_c", &[Source::Field], "field-solver"),
        Figure::Fig9 => ("p_out_w", &[Source::Analytic, Source::Field], "circuit"),
    };
    let value = |r: &SweepRow| -> Option<f64> {
        match figure {
            Figure::Fig5 => r.pi.map(|p| p.c_m),
            Figure::Fig7 => r.pi.map(|p| p.k_c),
            Figure::Fig9 => r.circuit.map(|c| c.p_out),
        }
    };

    let mut groups: Vec<(&str, Source, Vec<Vec<String>>)> = Vec::new();
    for r in rows.iter().filter(|r| sources.contains(&r.source)) {
        let Some(v) = value(r) else { continue };
        let idx = match groups.iter().position(|(m, s, _)| *m == r.medium && *s == r.source) {
            Some(i) => i,
            None => {
                groups.push((&r.medium, r.source, Vec::new()));
                groups.len() - 1
            }
        };
        groups[idx].2.push(vec![sci(r.distance_m), sci(v)]);
    }
    if groups.is_empty() {
        return Err(Error::MissingStage { figure: figure.name(), needed });
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for (medium, source, records) in groups {
        let path = dir.join(format!("{}_{}_{}.csv", figure.name(), medium, source.name()));
        write_table(&path, &["distance_m", column], &records)?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Serialize)]
struct MatrixDump<'a> {
    medium: &'a str,
    distance_m: f64,
    maxwell: [f64; 16],
    network: NetworkCapacitances,
}

/// Maxwell matrices and network capacitances of every successful field row,
/// as a JSON array.
pub fn emit_matrices(rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let dump: Vec<MatrixDump> = rows
        .iter()
        .filter_map(|r| {
            Some(MatrixDump {
                medium: &r.medium,
                distance_m: r.distance_m,
                maxwell: r.maxwell?,
                network: r.network?,
            })
        })
        .collect();
    let mut text =
        serde_json::to_string_pretty(&dump).map_err(|source| Error::Json { path: path.into(), source })?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

/// `medium,source,max_feasible_distance_m,peak_p_out_w`, empty where unknown.
pub fn emit_summary(summary: &[SummaryEntry], path: impl AsRef<Path>) -> Result<()> {
    let opt = |v: Option<f64>| v.map(sci).unwrap_or_default();
    let records: Vec<Vec<String>> = summary
        .iter()
        .map(|s| {
            vec![
                s.medium.clone(),
                s.source.name().to_string(),
                opt(s.max_feasible_distance_m),
                opt(s.peak_p_out_w),
            ]
        })
        .collect();
    write_table(path.as_ref(), &["medium", "source", "max_feasible_distance_m", "peak_p_out_w"], &records)
}

/// Writes `sweep.csv`, `summary.csv`, the requested figure files and,
/// optionally, `matrices.json` into `dir`.
pub fn write_outputs(
    result: &SweepResult,
    dir: impl AsRef<Path>,
    figures: &[Figure],
    dump_matrices: bool,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    // Validate figure dependencies before writing anything.
    for &f in figures {
        let ok = match f {
            Figure::Fig5 => result.rows.iter().any(|r| r.pi.is_some()),
            Figure::Fig7 => result.rows.iter().any(|r| r.source == Source::Field && r.pi.is_some()),
            Figure::Fig9 => result.rows.iter().any(|r| r.circuit.is_some()),
        };
        if !ok {
            return Err(match f {
                Figure::Fig5 => Error::MissingStage { figure: "fig5", needed: "capacitance" },
                Figure::Fig7 => Error::MissingStage { figure: "fig7", needed: "field-solver" },
                Figure::Fig9 => Error::MissingStage { figure: "fig9", needed: "circuit" },
            });
        }
    }
    let mut written = vec![dir.join("sweep.csv"), dir.join("summary.csv")];
    emit_csv(&result.rows, &written[0])?;
    emit_summary(&result.summary, &written[1])?;
    for &f in figures {
        written.extend(emit_figure_data(&result.rows, f, dir)?);
    }
    if dump_matrices {
        let p = dir.join("matrices.json");
        emit_matrices(&result.rows, &p)?;
        written.push(p);
    }
    Ok(written)
}
