//! Boundary-element extraction of the 4×4 Maxwell capacitance matrix.
//!
//! The surface charge on every panel (free plus polarisation charge) is a
//! constant unknown radiating into a uniform background permittivity
//! `eps_b`. Collocation at panel centroids gives one equation per panel:
//!
//! * conductor panel: the potential equals the plate voltage;
//! * slab panel: `eps_out E_n(+) = eps_in E_n(-)`, which with the sheet jump
//!   `E_n(±) = E_ext ± σ / (2 eps_b)` becomes
//!   `σ (κ_out + κ_in) / (2 eps_b) + (κ_out - κ_in) E_ext = 0`.
//!
//! Each plate is driven at 1 V with the others grounded. The free charge on a
//! plate panel follows from the field on both of its faces:
//! `σ_free = σ (κ_out + κ_in) / 2 + (κ_out - κ_in) eps_b E_ext`.
//!
//! Unknowns are stored as `s = σ / (4π eps_b)`, so all kernel coefficients are
//! pure geometry.

pub mod gmres;
pub mod kernel;
pub mod network;

use std::f64::consts::PI;

use faer::linalg::solvers::Solve;
use faer::{Mat, MatRef};
use nalgebra::{Matrix4, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::VACUUM_PERMITTIVITY;
use crate::error::{Error, Result};
use crate::geometry::{Panel, PanelMesh, DEFAULT_PANEL_BUDGET};
use crate::materials::Material;

use gmres::{GmresOutcome, GmresSettings};
pub use kernel::Kernel;
pub use network::{reduce_pi, self_capacitances, to_network, NetworkCapacitances, PiModel};

/// Air, the medium around the slab unless configured otherwise.
pub const DEFAULT_AMBIENT_EPS_R: f64 = 1.0058986;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative permittivity outside the slab.
    pub ambient_eps_r: f64,
    /// Exact panel integrals within this many panel diameters.
    pub near_field_factor: f64,
    /// Largest system solved by dense LU; bigger ones use GMRES.
    pub dense_limit: usize,
    pub panel_budget: usize,
    pub gmres_restart: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            ambient_eps_r: DEFAULT_AMBIENT_EPS_R,
            near_field_factor: 3.0,
            dense_limit: 6_000,
            panel_budget: DEFAULT_PANEL_BUDGET,
            gmres_restart: 80,
            max_iterations: 4_000,
            tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveMethod {
    Dense,
    Iterative { iterations: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapMatrix {
    /// Symmetrized Maxwell matrix, farads; rows and columns are plates 1..4.
    pub maxwell: Matrix4<f64>,
    pub network: NetworkCapacitances,
    /// Diagnostic only: plate capacitance to infinity.
    pub self_capacitance: [f64; 4],
    /// `max |M_ij - M_ji| / max |M|` before symmetrization.
    pub reciprocity_error: f64,
    pub unknowns: usize,
    pub method: SolveMethod,
}

impl CapMatrix {
    pub fn maxwell_row_major(&self) -> [f64; 16] {
        std::array::from_fn(|k| self.maxwell[(k / 4, k % 4)])
    }

    /// Smallest eigenvalue over the largest.
    pub fn min_eigen_ratio(&self) -> f64 {
        let eig = SymmetricEigen::new(self.maxwell).eigenvalues;
        eig.min() / eig.amax()
    }

    pub fn pi(&self) -> Result<PiModel> {
        reduce_pi(&self.network)
    }
}

#[derive(Debug, Clone, Copy)]
enum Row {
    /// Potential row for plate `k`, scaled by `scale`.
    Conductor { plate: usize, scale: f64 },
    /// Flux-continuity row with contrast `(κ_out - κ_in) / (κ_out + κ_in)`.
    Interface { contrast: f64 },
}

struct System<'a> {
    panels: Vec<&'a Panel>,
    rows: Vec<Row>,
    kernel: Kernel,
}

impl System<'_> {
    fn len(&self) -> usize {
        self.panels.len()
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        match self.rows[i] {
            Row::Conductor { scale, .. } => scale * self.kernel.potential(self.panels[i], self.panels[j]),
            Row::Interface { contrast } => {
                if i == j {
                    2.0 * PI
                } else {
                    contrast * self.kernel.normal_field(self.panels[i], self.panels[j])
                }
            }
        }
    }

    fn rhs(&self, plate: usize) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| match *r {
                Row::Conductor { plate: k, scale } if k == plate => scale,
                _ => 0.0,
            })
            .collect()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out.par_iter_mut().enumerate().for_each(|(i, o)| {
            *o = (0..self.len()).map(|j| self.entry(i, j) * x[j]).sum();
        });
    }

    fn solve_dense(&self) -> Result<Vec<[f64; 4]>> {
        let n = self.len();
        let mut a = vec![0.0; n * n];
        a.par_chunks_mut(n).enumerate().for_each(|(j, col)| {
            for (i, c) in col.iter_mut().enumerate() {
                *c = self.entry(i, j);
            }
        });
        let a = MatRef::from_column_major_slice(&a, n, n);
        let rhs: Vec<Vec<f64>> = (0..4).map(|k| self.rhs(k)).collect();
        let b = Mat::from_fn(n, 4, |i, k| rhs[k][i]);
        let x = a.partial_piv_lu().solve(&b);

        let finite = (0..4).all(|k| x.col(k).iter().all(|v| v.is_finite()));
        let residual = (a * &x - &b).norm_l2() / b.norm_l2();
        if !finite || residual.is_nan() || residual >= 1e-6 {
            return Err(Error::SingularSystem(format!(
                "dense solve residual {residual:.3e} on {n} unknowns"
            )));
        }
        Ok((0..n).map(|i| std::array::from_fn(|k| x[(i, k)])).collect())
    }

    fn solve_iterative(&self, opts: &SolverOptions) -> Result<(Vec<[f64; 4]>, usize)> {
        let n = self.len();
        let inv_diag: Vec<f64> = (0..n).map(|i| 1.0 / self.entry(i, i)).collect();
        let settings = GmresSettings {
            restart: opts.gmres_restart,
            max_iterations: opts.max_iterations,
            tolerance: opts.tolerance,
        };
        let mut out = vec![[0.0; 4]; n];
        let mut iterations = 0;
        for k in 0..4 {
            let b = self.rhs(k);
            let mut x = vec![0.0; n];
            let GmresOutcome { iterations: it, .. } =
                gmres::gmres(|v, o| self.apply(v, o), &b, &inv_diag, &mut x, settings)?;
            iterations = iterations.max(it);
            for (o, xi) in out.iter_mut().zip(x) {
                o[k] = xi;
            }
        }
        Ok((out, iterations))
    }
}

/// [`extract_with`] using default solver options.
pub fn extract(mesh: &PanelMesh, medium: &Material) -> Result<CapMatrix> {
    extract_with(mesh, medium, &SolverOptions::default())
}

/// Maxwell capacitance matrix of the coupler with `medium` in the slab (or
/// everywhere, when the slab is disabled).
pub fn extract_with(mesh: &PanelMesh, medium: &Material, opts: &SolverOptions) -> Result<CapMatrix> {
    if mesh.len() > opts.panel_budget {
        return Err(Error::MeshBudgetExceeded { panels: mesh.len(), budget: opts.panel_budget });
    }
    if !(medium.eps_r.is_finite() && medium.eps_r > 0.0) {
        return Err(Error::InvalidPermittivity(medium.eps_r));
    }
    if !(opts.ambient_eps_r.is_finite() && opts.ambient_eps_r > 0.0) {
        return Err(Error::InvalidPermittivity(opts.ambient_eps_r));
    }

    let slab = mesh.geometry.slab_enabled && mesh.interface_panels().next().is_some();
    let (eps_b, mesh) = if slab {
        (VACUUM_PERMITTIVITY * opts.ambient_eps_r, mesh.with_media(1.0, medium.eps_r / opts.ambient_eps_r))
    } else {
        (VACUUM_PERMITTIVITY * medium.eps_r, mesh.with_media(1.0, 1.0))
    };

    // Slab panels with no permittivity contrast carry no charge.
    let panels: Vec<&Panel> =
        mesh.panels.iter().filter(|p| p.conductor().is_some() || p.media.outside != p.media.inside).collect();
    for k in 0..4 {
        if !panels.iter().any(|p| p.conductor() == Some(k)) {
            return Err(Error::SingularSystem(format!("plate {} has no panels", k + 1)));
        }
    }
    let rows = panels
        .iter()
        .map(|p| match p.conductor() {
            Some(plate) => Row::Conductor { plate, scale: 1.0 / p.diameter() },
            None => {
                let (o, i) = (p.media.outside, p.media.inside);
                Row::Interface { contrast: (o - i) / (o + i) }
            }
        })
        .collect();
    let system = System { panels, rows, kernel: Kernel { near_factor: opts.near_field_factor } };

    let n = system.len();
    let (solution, method) = if n <= opts.dense_limit {
        (system.solve_dense()?, SolveMethod::Dense)
    } else {
        let (x, iterations) = system.solve_iterative(opts)?;
        (x, SolveMethod::Iterative { iterations })
    };

    // Free charge on each plate for each excitation.
    let contributions: Vec<(usize, [f64; 4])> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let p = system.panels[i];
            let plate = p.conductor()?;
            let (ko, ki) = (p.media.outside, p.media.inside);
            let mut e_n = [0.0; 4];
            if ko != ki {
                for j in (0..n).filter(|&j| j != i) {
                    let f = system.kernel.normal_field(p, system.panels[j]);
                    for (e, s) in e_n.iter_mut().zip(&solution[j]) {
                        *e += f * s;
                    }
                }
            }
            let q = std::array::from_fn(|l| {
                p.area() * eps_b * (2.0 * PI * (ko + ki) * solution[i][l] + (ko - ki) * e_n[l])
            });
            Some((plate, q))
        })
        .collect();
    let mut raw = Matrix4::<f64>::zeros();
    for (plate, q) in contributions {
        for l in 0..4 {
            raw[(plate, l)] += q[l];
        }
    }

    let scale = raw.amax();
    let reciprocity_error = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .map(|(i, j)| (raw[(i, j)] - raw[(j, i)]).abs())
        .fold(0.0, f64::max)
        / scale;
    let maxwell = (raw + raw.transpose()) * 0.5;
    let network = to_network(&maxwell)?;

    Ok(CapMatrix {
        maxwell,
        network,
        self_capacitance: self_capacitances(&maxwell),
        reciprocity_error,
        unknowns: n,
        method,
    })
}
