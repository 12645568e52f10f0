//! Capsule wireframes along the parameter grid lines of a surface.

use std::f64::consts::PI;

use thiserror::Error;

use crate::geom::{surface_point, ParamError, SurfaceParams, Vec3};
use crate::mesh::TriangleMesh;

/// Segments shorter than this are tessellated as a single sphere.
pub const COINCIDENT_CENTERS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WireframeError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("thickness must be finite and positive (got {0})")]
    Thickness(f64),
    #[error("outer_density must be at least 1")]
    OuterDensity,
    #[error("inner_density must be at least 1")]
    InnerDensity,
    #[error("capsule resolution must be at least 4 (got {0})")]
    Resolution(u32),
    #[error("capsule centers must be finite")]
    NonFiniteCenter,
    #[error("capsule radius must be finite and positive (got {0})")]
    Radius(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireframeSpec {
    pub surface: SurfaceParams,
    /// Capsules per unit step in `i`.
    pub outer_density: u32,
    /// Capsules per unit step in `j`.
    pub inner_density: u32,
    /// Capsule radius in mm.
    pub thickness: f64,
    /// Sides of the capsule cylinder.
    pub capsule_resolution: u32,
    /// Walk one extra substep past each grid edge, as the literal loop bounds do.
    pub legacy_overshoot: bool,
}

impl WireframeSpec {
    pub const DEFAULT_DENSITY: u32 = 8;
    pub const DEFAULT_THICKNESS: f64 = 1.2;
    pub const DEFAULT_RESOLUTION: u32 = 12;

    pub fn new(surface: SurfaceParams) -> Self {
        WireframeSpec {
            surface,
            outer_density: Self::DEFAULT_DENSITY,
            inner_density: Self::DEFAULT_DENSITY,
            thickness: Self::DEFAULT_THICKNESS,
            capsule_resolution: Self::DEFAULT_RESOLUTION,
            legacy_overshoot: false,
        }
    }

    pub fn validate(&self) -> Result<(), WireframeError> {
        self.surface.validate()?;
        if !(self.thickness.is_finite() && self.thickness > 0.0) {
            return Err(WireframeError::Thickness(self.thickness));
        }
        if self.outer_density < 1 {
            return Err(WireframeError::OuterDensity);
        }
        if self.inner_density < 1 {
            return Err(WireframeError::InnerDensity);
        }
        if self.capsule_resolution < 4 {
            return Err(WireframeError::Resolution(self.capsule_resolution));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Along `i` (the lat rib parameter).
    Outer,
    /// Along `j`.
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentKey {
    pub i: u32,
    pub j: u32,
    pub direction: Direction,
    pub step: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Vec3,
    pub b: Vec3,
    pub radius: f64,
    pub key: SegmentKey,
}

impl Segment {
    pub fn length(&self) -> f64 {
        (self.b - self.a).norm()
    }

    pub fn is_degenerate(&self) -> bool {
        self.length() < COINCIDENT_CENTERS
    }
}

/// Segments in ascending key order: for each grid point `(i, j)` with
/// `i <= 2 * lat_ribs`, `j <= long_ribs`, the substeps towards `(i + 1, j)`
/// then those towards `(i, j + 1)`.
pub fn plan_segments(spec: &WireframeSpec) -> Vec<Segment> {
    let p = &spec.surface;
    let extra = u32::from(spec.legacy_overshoot);
    let (od, id) = (spec.outer_density, spec.inner_density);
    let per_point = (od + id + 2 * extra) as usize;
    let points = (2 * p.lat_ribs as usize + 1) * (p.long_ribs as usize + 1);
    let mut out = Vec::with_capacity(points * per_point);
    for i in 0..=2 * p.lat_ribs {
        for j in 0..=p.long_ribs {
            let (fi, fj) = (i as f64, j as f64);
            for step in 0..od + extra {
                let x0 = fi + step as f64 / od as f64;
                let x1 = fi + (step + 1) as f64 / od as f64;
                out.push(Segment {
                    a: surface_point(x0, fj, p),
                    b: surface_point(x1, fj, p),
                    radius: spec.thickness,
                    key: SegmentKey { i, j, direction: Direction::Outer, step },
                });
            }
            for step in 0..id + extra {
                let y0 = fj + step as f64 / id as f64;
                let y1 = fj + (step + 1) as f64 / id as f64;
                out.push(Segment {
                    a: surface_point(fi, y0, p),
                    b: surface_point(fi, y1, p),
                    radius: spec.thickness,
                    key: SegmentKey { i, j, direction: Direction::Inner, step },
                });
            }
        }
    }
    out
}

/// Convex hull of two equal spheres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capsule {
    pub center_a: Vec3,
    pub center_b: Vec3,
    pub radius: f64,
    /// Azimuthal offset of the tessellation rings, in radians.
    pub twist: f64,
}

impl Capsule {
    pub fn new(center_a: Vec3, center_b: Vec3, radius: f64) -> Self {
        Capsule { center_a, center_b, radius, twist: 0.0 }
    }

    pub fn with_twist(self, twist: f64) -> Self {
        Capsule { twist, ..self }
    }

    /// Distance from `p` to the axis segment.
    pub fn axis_distance(&self, p: &Vec3) -> f64 {
        let ab = self.center_b - self.center_a;
        let len2 = ab.norm_squared();
        let t = if len2 > 0.0 {
            ((p - self.center_a).dot(&ab) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (p - (self.center_a + t * ab)).norm()
    }
}

/// Triangles in one capsule mesh (`4 n m - 4`, `m = ceil(n / 2)`).
pub fn capsule_triangle_count(resolution: u32) -> usize {
    let n = resolution as usize;
    4 * n * n.div_ceil(2) - 4
}

/// Triangles in the sphere used for coincident centers (`4 n m - 2 n - 4`).
pub fn sphere_triangle_count(resolution: u32) -> usize {
    let n = resolution as usize;
    4 * n * n.div_ceil(2) - 2 * n - 4
}

/// Unit vectors `(u, w)` completing `d` to a right-handed frame `(u, w, d)`.
/// `u` is built from the global axis least aligned with `d`.
fn frame(d: &Vec3) -> (Vec3, Vec3) {
    let axes = [Vec3::x(), Vec3::y(), Vec3::z()];
    let mut best = axes[0];
    for e in &axes[1..] {
        if e.dot(d).abs() < best.dot(d).abs() {
            best = *e;
        }
    }
    let u = (best - best.dot(d) * d).normalize();
    (u, d.cross(&u))
}

/// Closed, outward-wound tessellation of a capsule.
///
/// The cylinder has `resolution` sides. Each end cap is a hemisphere cut into
/// `ceil(resolution / 2)` latitude bands; the band nearest the pole is a flat
/// polygon so that no vertex sits on the axis. Coincident centers give a
/// sphere instead of a zero-height cylinder.
pub fn capsule_mesh(c: &Capsule, resolution: u32) -> Result<TriangleMesh, WireframeError> {
    if !(c.center_a.iter().chain(c.center_b.iter()).all(|x| x.is_finite()) && c.twist.is_finite()) {
        return Err(WireframeError::NonFiniteCenter);
    }
    if !(c.radius.is_finite() && c.radius > 0.0) {
        return Err(WireframeError::Radius(c.radius));
    }
    if resolution < 4 {
        return Err(WireframeError::Resolution(resolution));
    }
    let n = resolution as usize;
    let m = n.div_ceil(2);
    let r = c.radius;
    let axis = c.center_b - c.center_a;
    let len = axis.norm();
    let sphere = len < COINCIDENT_CENTERS;
    let d = if sphere { Vec3::z() } else { axis / len };
    let (u, w) = frame(&d);
    let radial: Vec<Vec3> = (0..n)
        .map(|s| {
            let theta = c.twist + 2.0 * PI * s as f64 / n as f64;
            theta.cos() * u + theta.sin() * w
        })
        .collect();

    // (center, polar angle from -d) per ring, ordered along +d
    let mut rings: Vec<(Vec3, f64)> = Vec::with_capacity(2 * m);
    if sphere {
        let center = 0.5 * (c.center_a + c.center_b);
        for k in 1..2 * m {
            rings.push((center, PI * k as f64 / (2 * m) as f64));
        }
    } else {
        for k in 1..=m {
            rings.push((c.center_a, 0.5 * PI * k as f64 / m as f64));
        }
        for k in (1..=m).rev() {
            rings.push((c.center_b, PI - 0.5 * PI * k as f64 / m as f64));
        }
    }

    let mut mesh = TriangleMesh::new();
    mesh.vertices.reserve(rings.len() * n);
    for (center, polar) in &rings {
        let (sp, cp) = polar.sin_cos();
        for rho in &radial {
            mesh.vertices.push(center + r * (-cp * d + sp * rho));
        }
    }

    let idx = |ring: usize, s: usize| (ring * n + s % n) as u32;
    // flat cap facing -d
    for s in 1..n - 1 {
        mesh.triangles.push([idx(0, 0), idx(0, s + 1), idx(0, s)]);
    }
    for ring in 0..rings.len() - 1 {
        for s in 0..n {
            mesh.triangles.push([idx(ring, s), idx(ring, s + 1), idx(ring + 1, s + 1)]);
            mesh.triangles.push([idx(ring, s), idx(ring + 1, s + 1), idx(ring + 1, s)]);
        }
    }
    let last = rings.len() - 1;
    for s in 1..n - 1 {
        mesh.triangles.push([idx(last, 0), idx(last, s), idx(last, s + 1)]);
    }
    mesh.component_ids = vec![0; mesh.triangles.len()];
    Ok(mesh)
}

/// Ring twist for the capsule at `index` in a plan. Successive capsules step
/// by the golden ratio of one ring sector, so capsules that trace the same
/// segment do not share vertex positions.
pub fn plan_twist(index: usize, resolution: u32) -> f64 {
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let frac = (index as f64 * golden).fract();
    frac * 2.0 * PI / resolution as f64
}

/// Union of the capsule meshes of every planned segment, in plan order. Each
/// capsule keeps its own vertices and is labelled with its plan index.
pub fn build_wireframe(spec: &WireframeSpec) -> Result<TriangleMesh, WireframeError> {
    spec.validate()?;
    let plan = plan_segments(spec);
    let res = spec.capsule_resolution;
    let mut mesh = TriangleMesh::new();
    mesh.triangles.reserve(plan.len() * capsule_triangle_count(res));
    for (k, seg) in plan.iter().enumerate() {
        let capsule = Capsule::new(seg.a, seg.b, seg.radius).with_twist(plan_twist(k, res));
        mesh.append(&capsule_mesh(&capsule, res)?, k as u32);
    }
    Ok(mesh)
}
