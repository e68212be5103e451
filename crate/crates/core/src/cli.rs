//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when some sweep rows failed, 1 on
//! configuration or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analytic::analytic_sweep;
use crate::error::{Error, Result};
use crate::materials::MaterialRegistry;
use crate::pipeline::{
    csv_error, run_plan, write_csv, write_outputs, Distances, Figure, Source, Stage, SweepConfig, SweepResult,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cpt", version, about = "Capacitive power transfer coupler toolkit")]
pub struct Cli {
    /// Extra materials: JSON array of {"name", "eps_r"}.
    #[arg(long, global = true, value_name = "PATH")]
    pub materials: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Material registry.
    Materials {
        #[command(subcommand)]
        action: MaterialsAction,
    },
    /// Parallel-plate mutual capacitance over a distance sweep, as CSV.
    Analytic {
        #[arg(long)]
        medium: String,
        /// Metres.
        #[arg(long, default_value_t = 0.3)]
        plate_side: f64,
        /// `start:stop:points[:log|linear]` or a comma-separated list, metres.
        #[arg(long, default_value = "0.001:0.2:25:log")]
        distances: Distances,
    },
    /// Field-solver rows of a sweep config, as CSV.
    Extract {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sweep config rows with circuit results, as CSV.
    Circuit {
        #[arg(long)]
        config: PathBuf,
    },
    /// Full sweep written to a directory.
    Pipeline {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to `output.dir` of the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated subset of fig5, fig7, fig9.
        #[arg(long, value_delimiter = ',')]
        figures: Vec<Figure>,
        /// Also write matrices.json.
        #[arg(long)]
        dump_matrices: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MaterialsAction {
    List,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let _ =
                if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(0) => EXIT_OK,
        Ok(failed) => {
            let _ = writeln!(err, "cpt: {failed} row(s) failed; see the error column");
            EXIT_PARTIAL
        }
        Err(e) => {
            let _ = writeln!(err, "cpt: {e}");
            EXIT_FAILURE
        }
    }
}

fn registry(cli: &Cli) -> Result<MaterialRegistry> {
    let reg = MaterialRegistry::builtin();
    match &cli.materials {
        Some(p) => reg.with_file(p),
        None => Ok(reg),
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn sweep(cli: &Cli, config: &PathBuf, stages: &[Stage]) -> Result<SweepResult> {
    let mut cfg = SweepConfig::from_file(config)?;
    cfg.stages = stages.to_vec();
    let plan = cfg.validate(&registry(cli)?)?;
    Ok(run_plan(&plan))
}

/// Returns the number of failed rows.
fn execute(cli: &Cli, out: &mut dyn Write) -> Result<usize> {
    match &cli.command {
        Command::Materials { action: MaterialsAction::List } => {
            let reg = registry(cli)?;
            let mut text = String::from("name,eps_r\n");
            for m in reg.entries() {
                text.push_str(&format!("{},{}\n", m.name, m.eps_r));
            }
            out.write_all(text.as_bytes()).map_err(stdout_err)?;
            Ok(0)
        }
        Command::Analytic { medium, plate_side, distances } => {
            let reg = registry(cli)?;
            let m = reg.lookup(medium)?;
            let rows = analytic_sweep(m, *plate_side, &distances.values()?)?;
            let mut text = String::from("distance_m,c_main_f,c_m_f\n");
            for r in rows {
                text.push_str(&format!("{:.8e},{:.8e},{:.8e}\n", r.distance, r.c_main, r.c_m));
            }
            out.write_all(text.as_bytes()).map_err(stdout_err)?;
            Ok(0)
        }
        Command::Extract { config } => {
            let res = sweep(cli, config, &[Stage::Analytic, Stage::Field])?;
            let rows: Vec<_> = res.rows.into_iter().filter(|r| r.source == Source::Field).collect();
            write_csv(&rows, &mut *out).map_err(|e| csv_error(Path::new("<stdout>"), e))?;
            Ok(rows.iter().filter(|r| r.error.is_some()).count())
        }
        Command::Circuit { config } => {
            let cfg = SweepConfig::from_file(config)?;
            let mut stages = cfg.stages.clone();
            if !stages.contains(&Stage::Circuit) {
                stages.push(Stage::Circuit);
            }
            let res = sweep(cli, config, &stages)?;
            write_csv(&res.rows, &mut *out).map_err(|e| csv_error(Path::new("<stdout>"), e))?;
            Ok(res.failed_rows())
        }
        Command::Pipeline { config, out: dir, figures, dump_matrices } => {
            let cfg = SweepConfig::from_file(config)?;
            let dir = dir
                .clone()
                .or_else(|| cfg.output.dir.clone())
                .ok_or_else(|| Error::Config("no output directory (use --out)".into()))?;
            let figures = if figures.is_empty() { cfg.output.figures.clone() } else { figures.clone() };
            let dump = *dump_matrices || cfg.output.dump_matrices;
            let plan = cfg.validate(&registry(cli)?)?;
            let res = run_plan(&plan);
            let written = write_outputs(&res, &dir, &figures, dump)?;
            let mut text = String::new();
            for s in &res.summary {
                let fmt = |v: Option<f64>| v.map(|x| format!("{x:.4e}")).unwrap_or_else(|| "-".into());
                text.push_str(&format!(
                    "{:<12} {:<8} max feasible distance {} m, peak output {} W\n",
                    s.medium,
                    s.source.name(),
                    fmt(s.max_feasible_distance_m),
                    fmt(s.peak_p_out_w)
                ));
            }
            text.push_str(&format!("wrote {} file(s) to {}\n", written.len(), dir.display()));
            out.write_all(text.as_bytes()).map_err(stdout_err)?;
            Ok(res.failed_rows())
        }
    }
}
