//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use cpt::circuit::CircuitParams;
use cpt::field_solver::{CapMatrix, NetworkCapacitances};
use nalgebra::{Complex, Matrix3, Matrix4, Vector3, Vector4};

/// Port admittances of the coupler computed by nodal elimination.
///
/// Nodes 1,2 form port 1 and nodes 3,4 port 2. Each side is floating, so its
/// net charge is zero. Only the four cross capacitances connect the sides.
/// Returns `(c_p, c_s, c_m)` = `(Y11, Y22, -Y12)`.
pub fn pi_by_elimination(net: &NetworkCapacitances) -> (f64, f64, f64) {
    let mut lap = Matrix4::<f64>::zeros();
    for (i, j, c) in [(0, 2, net.c13), (0, 3, net.c14), (1, 2, net.c23), (1, 3, net.c24)] {
        lap[(i, i)] += c;
        lap[(j, j)] += c;
        lap[(i, j)] -= c;
        lap[(j, i)] -= c;
    }
    // Rows: φ2 = 0; φ1 - φ2 = v1; φ3 - φ4 = v2; q3 + q4 = 0.
    let mut a = Matrix4::<f64>::zeros();
    a[(0, 1)] = 1.0;
    a[(1, 0)] = 1.0;
    a[(1, 1)] = -1.0;
    a[(2, 2)] = 1.0;
    a[(2, 3)] = -1.0;
    for k in 0..4 {
        a[(3, k)] = lap[(2, k)] + lap[(3, k)];
    }
    let lu = a.lu();
    let charges = |v1: f64, v2: f64| -> Vector4<f64> {
        let phi = lu.solve(&Vector4::new(0.0, v1, v2, 0.0)).expect("constraint system is regular");
        lap * phi
    };
    let q_a = charges(1.0, 0.0);
    let q_b = charges(0.0, 1.0);
    (q_a[0], q_b[2], -q_b[0])
}

/// Load voltage of the resonant link by mesh-current analysis.
pub fn load_voltage_mesh(params: &CircuitParams, c_p: f64, c_s: f64, c_m: f64, f: f64) -> Complex<f64> {
    let w = 2.0 * PI * f;
    let j = Complex::new(0.0, 1.0);
    let zl = j * w * params.l_p;
    let zc = |c: f64| 1.0 / (j * w * c);
    let (zp, zm, zs) = (zc(c_p), zc(c_m), zc(c_s));
    let r = Complex::new(params.r_load, 0.0);
    let z = Matrix3::new(
        zl + zp,
        -zp,
        Complex::new(0.0, 0.0),
        -zp,
        zp + zm + zs,
        -zs,
        Complex::new(0.0, 0.0),
        -zs,
        zs + r,
    );
    let v = Vector3::new(Complex::new(params.v_in, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    let i = z.lu().solve(&v).expect("mesh system is regular");
    r * i[2]
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Sign convention, symmetry and positive semidefiniteness of an extraction.
pub fn check_invariants(c: &CapMatrix) -> Result<(), String> {
    if c.reciprocity_error > 1e-6 {
        return Err(format!("reciprocity error {:.2e}", c.reciprocity_error));
    }
    let m = &c.maxwell;
    for i in 0..4 {
        if m[(i, i)] <= 0.0 {
            return Err(format!("diagonal {i} not positive"));
        }
        for j in 0..4 {
            if i != j && m[(i, j)] > 0.0 {
                return Err(format!("off-diagonal ({i},{j}) positive"));
            }
            if m[(i, j)] != m[(j, i)] {
                return Err(format!("asymmetric at ({i},{j})"));
            }
        }
    }
    let ratio = c.min_eigen_ratio();
    if ratio < -1e-9 {
        return Err(format!("negative eigenvalue ratio {ratio:.2e}"));
    }
    Ok(())
}
