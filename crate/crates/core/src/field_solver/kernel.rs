//! Integrals of `1/|p - r'|` over a flat rectangle and their gradients.
//!
//! For a panel with local axes `(u, v, n)` and an observation point at local
//! offset `(pu, pv, w)`, substitute `a = u' - pu`, `b = v' - pv`. The double
//! antiderivative of `1/r` is
//!
//! ```text
//! G(a, b) = a asinh(b / sqrt(a² + w²)) + b asinh(a / sqrt(b² + w²)) - w atan(ab / (w r))
//! ```
//!
//! and the panel integral is the corner sum
//! `G(a2,b2) - G(a1,b2) - G(a2,b1) + G(a1,b1)`. Differentiating under the
//! corner sum gives the field components.

use crate::geometry::{Panel, Vec3};

struct Local {
    a: [f64; 2],
    b: [f64; 2],
    w: f64,
}

fn local(panel: &Panel, p: &Vec3) -> Local {
    let r = p - panel.centroid;
    let pu = r.dot(&panel.u);
    let pv = r.dot(&panel.v);
    Local {
        a: [-panel.half_u - pu, panel.half_u - pu],
        b: [-panel.half_v - pv, panel.half_v - pv],
        w: r.dot(&panel.normal),
    }
}

fn corner_sum(l: &Local, f: impl Fn(f64, f64) -> f64) -> f64 {
    f(l.a[1], l.b[1]) - f(l.a[0], l.b[1]) - f(l.a[1], l.b[0]) + f(l.a[0], l.b[0])
}

/// `x * asinh(y / sqrt(x² + w²))`, zero when `x == 0`.
fn x_asinh(x: f64, y: f64, w: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (y / x.hypot(w)).asinh()
    }
}

/// `asinh(y / sqrt(x² + w²))`; the in-plane field is only requested away
/// from the panel's own plane, so the denominator does not vanish there.
fn asinh_ratio(x: f64, y: f64, w: f64) -> f64 {
    let rho = x.hypot(w);
    if rho == 0.0 {
        0.0
    } else {
        (y / rho).asinh()
    }
}

/// Solid-angle term `atan(ab / (w r))`. Zero in the panel plane, which is the
/// principal value on the panel and the exact limit outside it.
fn solid_angle(a: f64, b: f64, w: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        let r = (a * a + b * b + w * w).sqrt();
        (a * b / (w * r)).atan()
    }
}

/// `∫∫ dS' / |p - r'|` over the panel, exact.
pub fn potential_integral(panel: &Panel, p: &Vec3) -> f64 {
    let l = local(panel, p);
    let w = l.w;
    corner_sum(&l, |a, b| x_asinh(a, b, w) + x_asinh(b, a, w) - w * solid_angle(a, b, w))
}

/// Component along `dir` of `-∇_p ∫∫ dS' / |p - r'|`, exact. On the panel
/// itself the normal component is the principal value (zero).
pub fn field_integral(panel: &Panel, p: &Vec3, dir: &Vec3) -> f64 {
    let l = local(panel, p);
    let w = l.w;
    let (cu, cv, cn) = (dir.dot(&panel.u), dir.dot(&panel.v), dir.dot(&panel.normal));
    let mut e = 0.0;
    if cu.abs() > 1e-15 {
        e += cu * corner_sum(&l, |a, b| asinh_ratio(a, b, w));
    }
    if cv.abs() > 1e-15 {
        e += cv * corner_sum(&l, |a, b| asinh_ratio(b, a, w));
    }
    if cn.abs() > 1e-15 {
        e += cn * corner_sum(&l, |a, b| solid_angle(a, b, w));
    }
    e
}

/// Panel-to-panel coefficients with a centroid (point-charge) approximation
/// beyond `near_factor` panel diameters.
#[derive(Debug, Clone, Copy)]
pub struct Kernel {
    pub near_factor: f64,
}

impl Kernel {
    fn is_far(&self, obs: &Panel, src: &Panel, dist: f64) -> bool {
        // Uniform grids put many pairs exactly on the cutoff; the margin keeps
        // mirror-image pairs on the same side of it despite rounding.
        dist > self.near_factor * obs.diameter().max(src.diameter()) * (1.0 + 1e-9)
    }

    /// Potential at the centroid of `obs` due to unit density on `src`,
    /// in units of `1 / (4π ε)`.
    pub fn potential(&self, obs: &Panel, src: &Panel) -> f64 {
        let d = obs.centroid - src.centroid;
        let dist = d.norm();
        if self.is_far(obs, src, dist) {
            src.area() / dist
        } else {
            potential_integral(src, &obs.centroid)
        }
    }

    /// Field along the normal of `obs` at its centroid due to unit density
    /// on `src`, in units of `1 / (4π ε)`.
    pub fn normal_field(&self, obs: &Panel, src: &Panel) -> f64 {
        let d = obs.centroid - src.centroid;
        let dist = d.norm();
        if self.is_far(obs, src, dist) {
            src.area() * d.dot(&obs.normal) / (dist * dist * dist)
        } else {
            field_integral(src, &obs.centroid, &obs.normal)
        }
    }
}
