//! Four-plate coupler layout and its boundary-element panel mesh.
//!
//! Coordinates: the primary plates (1, 2) lie in the plane `z = -gap/2`, the
//! secondary plates (3, 4) in `z = +gap/2`. Plate 1 faces plate 3 and plate 2
//! faces plate 4. Plates 1 and 3 sit at negative `x`. All plates are
//! zero-thickness squares centred on `y = 0`.
//!
//! When the slab is enabled, a dielectric box fills `|z| <= gap/2` and extends
//! `slab_margin` beyond the plate footprint in `x` and `y`. The plates lie on
//! its top and bottom faces.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

pub type Vec3 = Vector3<f64>;

/// Default panel cap for [`mesh`].
pub const DEFAULT_PANEL_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplerGeometry {
    /// Side of each square plate, metres.
    pub plate_side: f64,
    /// Distance between facing plates, metres.
    pub gap: f64,
    /// Edge-to-edge spacing of the two coplanar plates, metres.
    pub side_spacing: f64,
    /// Lateral overhang of the dielectric slab beyond the plates, metres.
    pub slab_margin: f64,
    /// `false` means the medium fills all space.
    pub slab_enabled: bool,
}

impl CouplerGeometry {
    /// Square plates of `plate_side` with one plate-width between the
    /// coplanar plates and a slab overhang of a tenth of a plate.
    pub fn standard(plate_side: f64, gap: f64) -> Result<Self> {
        let g = Self {
            plate_side,
            gap,
            side_spacing: plate_side,
            slab_margin: 0.1 * plate_side,
            slab_enabled: true,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("plate side", self.plate_side)?;
        require_positive("gap", self.gap)?;
        require_positive("side spacing", self.side_spacing)?;
        if !(self.slab_margin.is_finite() && self.slab_margin >= 0.0) {
            return Err(Error::NonPositiveDimension { what: "slab margin", value: self.slab_margin });
        }
        Ok(())
    }

    pub fn with_gap(&self, gap: f64) -> Result<Self> {
        let g = Self { gap, ..*self };
        g.validate()?;
        Ok(g)
    }

    pub fn with_slab(&self, slab_enabled: bool) -> Self {
        Self { slab_enabled, ..*self }
    }

    pub fn plate_area(&self) -> f64 {
        self.plate_side * self.plate_side
    }

    /// Centre of plate `index` (0-based: plates 1..4 are 0..3).
    pub fn plate_center(&self, index: usize) -> Vec3 {
        let x = 0.5 * (self.side_spacing + self.plate_side);
        let z = 0.5 * self.gap;
        match index {
            0 => Vec3::new(-x, 0.0, -z),
            1 => Vec3::new(x, 0.0, -z),
            2 => Vec3::new(-x, 0.0, z),
            3 => Vec3::new(x, 0.0, z),
            _ => panic!("plate index {index} out of range"),
        }
    }

    /// Slab half-extents in `x` and `y`.
    fn slab_half_extent(&self) -> (f64, f64) {
        (
            0.5 * self.side_spacing + self.plate_side + self.slab_margin,
            0.5 * self.plate_side + self.slab_margin,
        )
    }
}

/// Which surface a panel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Owner {
    /// Conductor plate, 0-based (plate 1 is `Conductor(0)`).
    Conductor(usize),
    /// Face of the dielectric slab.
    Interface(SlabFace),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SlabFace {
    Bottom,
    Top,
    XMin,
    XMax,
    YMin,
    YMax,
}

/// Relative permittivities on the two sides of a panel. `outside` is the
/// side the normal points to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumPair {
    pub outside: f64,
    pub inside: f64,
}

impl Default for MediumPair {
    fn default() -> Self {
        Self { outside: 1.0, inside: 1.0 }
    }
}

/// Flat rectangular panel carrying a uniform charge density.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub centroid: Vec3,
    /// In-plane unit axes.
    pub u: Vec3,
    pub v: Vec3,
    /// Unit normal, pointing out of the slab.
    pub normal: Vec3,
    /// Half side lengths along `u` and `v`.
    pub half_u: f64,
    pub half_v: f64,
    pub owner: Owner,
    pub media: MediumPair,
}

impl Panel {
    pub fn area(&self) -> f64 {
        4.0 * self.half_u * self.half_v
    }

    /// Length of the panel diagonal.
    pub fn diameter(&self) -> f64 {
        2.0 * self.half_u.hypot(self.half_v)
    }

    pub fn conductor(&self) -> Option<usize> {
        match self.owner {
            Owner::Conductor(k) => Some(k),
            Owner::Interface(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelMesh {
    /// Conductor panels first (plate by plate), then slab panels.
    pub panels: Vec<Panel>,
    pub geometry: CouplerGeometry,
    pub refinement: usize,
}

impl PanelMesh {
    pub fn len(&self) -> usize {
        self.panels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.panels.is_empty()
    }

    pub fn conductor_panels(&self) -> impl Iterator<Item = &Panel> {
        self.panels.iter().filter(|p| p.conductor().is_some())
    }

    pub fn interface_panels(&self) -> impl Iterator<Item = &Panel> {
        self.panels.iter().filter(|p| p.conductor().is_none())
    }

    /// Copy of the mesh with permittivities filled in: `ambient` outside the
    /// slab, `slab` inside it. Conductor panels get the same pair, since one
    /// face of each plate touches the slab.
    pub fn with_media(&self, ambient: f64, slab: f64) -> PanelMesh {
        let media = MediumPair { outside: ambient, inside: slab };
        let panels = self.panels.iter().map(|p| Panel { media, ..p.clone() }).collect();
        PanelMesh { panels, ..self.clone() }
    }
}

/// Splits `[lo, hi]` at the sorted `breaks` and subdivides every piece into
/// cells no longer than `h`. Returns cell edges.
fn graded_edges(breaks: &[f64], h: f64) -> Vec<f64> {
    let mut edges = vec![breaks[0]];
    for w in breaks.windows(2) {
        let len = w[1] - w[0];
        if len <= 1e-12 * h {
            continue;
        }
        let k = ((len / h) - 1e-9).ceil().max(1.0) as usize;
        for i in 1..=k {
            edges.push(if i == k { w[1] } else { w[0] + len * i as f64 / k as f64 });
        }
    }
    edges
}

fn cells(edges: &[f64]) -> impl Iterator<Item = (f64, f64)> + '_ {
    edges.windows(2).map(|w| (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0])))
}

/// Meshes `geom` with `refinement`×`refinement` panels per plate and the
/// default panel budget.
pub fn mesh(geom: &CouplerGeometry, refinement: usize) -> Result<PanelMesh> {
    mesh_with_budget(geom, refinement, DEFAULT_PANEL_BUDGET)
}

pub fn mesh_with_budget(geom: &CouplerGeometry, refinement: usize, budget: usize) -> Result<PanelMesh> {
    geom.validate()?;
    if refinement == 0 {
        return Err(Error::Config("mesh refinement must be at least 1".into()));
    }
    let n = refinement;
    let h = geom.plate_side / n as f64;
    let half_plate = 0.5 * geom.plate_side;
    let half_gap = 0.5 * geom.gap;

    let (sx, sy) = geom.slab_half_extent();
    let inner = 0.5 * geom.side_spacing;
    let outer = inner + geom.plate_side;
    let x_edges = graded_edges(&[-sx, -outer, -inner, inner, outer, sx], h);
    let y_edges = graded_edges(&[-sy, -half_plate, half_plate, sy], h);
    let z_edges = graded_edges(&[-half_gap, half_gap], h);

    let in_plate = |x: f64, y: f64| {
        let ax = x.abs();
        ax > inner && ax < outer && y.abs() < half_plate
    };

    let conductor_count = 4 * n * n;
    let face_cells = if geom.slab_enabled {
        let nx = x_edges.len() - 1;
        let ny = y_edges.len() - 1;
        let nz = z_edges.len() - 1;
        let covered = cells(&x_edges)
            .flat_map(|(x, _)| cells(&y_edges).map(move |(y, _)| (x, y)))
            .filter(|&(x, y)| in_plate(x, y))
            .count();
        2 * (nx * ny - covered) + 2 * nz * (nx + ny)
    } else {
        0
    };
    let total = conductor_count + face_cells;
    if total > budget {
        return Err(Error::MeshBudgetExceeded { panels: total, budget });
    }

    let ex = Vec3::x();
    let ey = Vec3::y();
    let ez = Vec3::z();
    let mut panels = Vec::with_capacity(total);

    for k in 0..4 {
        let c = geom.plate_center(k);
        let normal = if k < 2 { -ez } else { ez };
        for i in 0..n {
            for j in 0..n {
                let x = c.x - half_plate + (i as f64 + 0.5) * h;
                let y = c.y - half_plate + (j as f64 + 0.5) * h;
                panels.push(Panel {
                    centroid: Vec3::new(x, y, c.z),
                    u: ex,
                    v: ey,
                    normal,
                    half_u: 0.5 * h,
                    half_v: 0.5 * h,
                    owner: Owner::Conductor(k),
                    media: MediumPair::default(),
                });
            }
        }
    }

    if geom.slab_enabled {
        for (face, z, normal) in [(SlabFace::Bottom, -half_gap, -ez), (SlabFace::Top, half_gap, ez)] {
            for (x, hx) in cells(&x_edges) {
                for (y, hy) in cells(&y_edges) {
                    if in_plate(x, y) {
                        continue;
                    }
                    panels.push(Panel {
                        centroid: Vec3::new(x, y, z),
                        u: ex,
                        v: ey,
                        normal,
                        half_u: hx,
                        half_v: hy,
                        owner: Owner::Interface(face),
                        media: MediumPair::default(),
                    });
                }
            }
        }
        for (face, x, normal) in [(SlabFace::XMin, -sx, -ex), (SlabFace::XMax, sx, ex)] {
            for (y, hy) in cells(&y_edges) {
                for (z, hz) in cells(&z_edges) {
                    panels.push(Panel {
                        centroid: Vec3::new(x, y, z),
                        u: ey,
                        v: ez,
                        normal,
                        half_u: hy,
                        half_v: hz,
                        owner: Owner::Interface(face),
                        media: MediumPair::default(),
                    });
                }
            }
        }
        for (face, y, normal) in [(SlabFace::YMin, -sy, -ey), (SlabFace::YMax, sy, ey)] {
            for (x, hx) in cells(&x_edges) {
                for (z, hz) in cells(&z_edges) {
                    panels.push(Panel {
                        centroid: Vec3::new(x, y, z),
                        u: ex,
                        v: ez,
                        normal,
                        half_u: hx,
                        half_v: hz,
                        owner: Owner::Interface(face),
                        media: MediumPair::default(),
                    });
                }
            }
        }
    }
    debug_assert_eq!(panels.len(), total);

    Ok(PanelMesh { panels, geometry: *geom, refinement })
}
