//! Maxwell matrix → two-terminal capacitances → Pi-model.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance (to the largest entry) for positive off-diagonal
/// Maxwell coefficients.
pub const SIGN_TOLERANCE: f64 = 1e-3;

/// The six pairwise capacitances of the four-plate coupler, farads.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NetworkCapacitances {
    pub c12: f64,
    pub c13: f64,
    pub c14: f64,
    pub c23: f64,
    pub c24: f64,
    pub c34: f64,
}

impl NetworkCapacitances {
    /// Only the facing pairs coupled, both with `c_main`.
    pub fn ideal(c_main: f64) -> Self {
        Self { c13: c_main, c24: c_main, ..Self::default() }
    }

    /// Capacitance between plates `i` and `j` (0-based, `i != j`).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 1) => self.c12,
            (0, 2) => self.c13,
            (0, 3) => self.c14,
            (1, 2) => self.c23,
            (1, 3) => self.c24,
            (2, 3) => self.c34,
            _ => panic!("no network capacitance between plates {i} and {j}"),
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.c12, self.c13, self.c14, self.c23, self.c24, self.c34]
    }

    pub fn scaled(&self, s: f64) -> Self {
        let [c12, c13, c14, c23, c24, c34] = self.to_array().map(|c| c * s);
        Self { c12, c13, c14, c23, c24, c34 }
    }
}

/// Pairwise capacitances from a Maxwell (short-circuit) capacitance matrix.
///
/// Small positive off-diagonals within [`SIGN_TOLERANCE`] are treated as
/// zero coupling.
pub fn to_network(maxwell: &Matrix4<f64>) -> Result<NetworkCapacitances> {
    let scale = maxwell.amax();
    for i in 0..4 {
        if maxwell[(i, i)] < 0.0 {
            return Err(Error::SignConventionViolation { row: i + 1, col: i + 1, value: maxwell[(i, i)] });
        }
        for j in 0..4 {
            if i != j && maxwell[(i, j)] > SIGN_TOLERANCE * scale {
                return Err(Error::SignConventionViolation {
                    row: i + 1,
                    col: j + 1,
                    value: maxwell[(i, j)],
                });
            }
        }
    }
    let c = |i: usize, j: usize| (-maxwell[(i, j)]).max(0.0);
    Ok(NetworkCapacitances {
        c12: c(0, 1),
        c13: c(0, 2),
        c14: c(0, 3),
        c23: c(1, 2),
        c24: c(1, 3),
        c34: c(2, 3),
    })
}

/// Capacitance of each plate to infinity (Maxwell row sums).
pub fn self_capacitances(maxwell: &Matrix4<f64>) -> [f64; 4] {
    std::array::from_fn(|i| maxwell.row(i).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiModel {
    pub c_p: f64,
    pub c_s: f64,
    pub c_m: f64,
    /// `|c_m| / sqrt(c_p c_s)`.
    pub k_c: f64,
}

/// Reduces the cross-coupling quad (C13, C14, C23, C24) to a Pi-model.
///
/// The leakage capacitances C12 and C34 sit directly across the ports and do
/// not enter the reduction.
pub fn reduce_pi(net: &NetworkCapacitances) -> Result<PiModel> {
    let NetworkCapacitances { c13, c14, c23, c24, .. } = *net;
    let sum = c13 + c14 + c23 + c24;
    if sum.is_nan() || sum <= 0.0 {
        return Err(Error::DegenerateCoupler(sum));
    }
    let c_p = (c13 + c14) * (c23 + c24) / sum;
    let c_s = (c13 + c23) * (c14 + c24) / sum;
    let c_m = (c13 * c24 - c14 * c23) / sum;
    let k_c = if c_p > 0.0 && c_s > 0.0 { c_m.abs() / (c_p * c_s).sqrt() } else { 0.0 };
    Ok(PiModel { c_p, c_s, c_m, k_c })
}
