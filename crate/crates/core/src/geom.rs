//! Surface parametrizations of the torus, the figure-8 Klein bottle and the
//! Roman surface, evaluated on a (possibly fractional) parameter grid.
//!
//! All angles are in degrees. Grid indices `i`, `j` are scaled to angles by
//! the rib counts of [`SurfaceParams`].

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

/// A point or displacement in millimeters.
pub type Vec3 = Vector3<f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("outer_radius must be finite and positive (got {0})")]
    OuterRadius(f64),
    #[error("inner_radius must satisfy 0 < inner_radius < outer_radius (got inner {inner}, outer {outer})")]
    InnerRadius { inner: f64, outer: f64 },
    #[error("lat_ribs must be at least 3 (got {0})")]
    LatRibs(u32),
    #[error("long_ribs must be at least 3 (got {0})")]
    LongRibs(u32),
    #[error("amplitude must be finite and non-negative (got {0})")]
    Amplitude(f64),
}

/// Sine of an angle in degrees, exact at multiples of 90.
pub fn sin_deg(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    if r == 0.0 || r == 180.0 {
        0.0
    } else if r == 90.0 {
        1.0
    } else if r == 270.0 {
        -1.0
    } else {
        r.to_radians().sin()
    }
}

/// Cosine of an angle in degrees, exact at multiples of 90.
pub fn cos_deg(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    if r == 90.0 || r == 270.0 {
        0.0
    } else if r == 0.0 {
        1.0
    } else if r == 180.0 {
        -1.0
    } else {
        r.to_radians().cos()
    }
}

/// A proper rotation acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix(Matrix3<f64>);

impl RotationMatrix {
    pub fn identity() -> Self {
        RotationMatrix(Matrix3::identity())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.0 * v
    }

    pub fn then(&self, next: &RotationMatrix) -> RotationMatrix {
        RotationMatrix(next.0 * self.0)
    }
}

impl std::ops::Mul for RotationMatrix {
    type Output = RotationMatrix;

    fn mul(self, rhs: RotationMatrix) -> RotationMatrix {
        RotationMatrix(self.0 * rhs.0)
    }
}

impl std::ops::Mul<Vec3> for RotationMatrix {
    type Output = Vec3;

    fn mul(self, rhs: Vec3) -> Vec3 {
        self.0 * rhs
    }
}

/// Rotation `Rz(az) * Ry(ay) * Rx(ax)`; angles in degrees.
pub fn rotation(ax: f64, ay: f64, az: f64) -> RotationMatrix {
    let (sx, cx) = (sin_deg(ax), cos_deg(ax));
    let (sy, cy) = (sin_deg(ay), cos_deg(ay));
    let (sz, cz) = (sin_deg(az), cos_deg(az));
    let rx = Matrix3::new(1.0, 0.0, 0.0, 0.0, cx, -sx, 0.0, sx, cx);
    let ry = Matrix3::new(cy, 0.0, sy, 0.0, 1.0, 0.0, -sy, 0.0, cy);
    let rz = Matrix3::new(cz, -sz, 0.0, sz, cz, 0.0, 0.0, 0.0, 1.0);
    RotationMatrix(rz * ry * rx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Torus,
    Klein,
    Roman,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Torus => "torus",
            SurfaceKind::Klein => "klein",
            SurfaceKind::Roman => "roman",
        }
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "torus" => Ok(SurfaceKind::Torus),
            "klein" => Ok(SurfaceKind::Klein),
            "roman" => Ok(SurfaceKind::Roman),
            other => Err(format!("unknown surface '{other}' (expected torus, klein or roman)")),
        }
    }
}

impl std::fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape parameters shared by the three parametrizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceParams {
    pub kind: SurfaceKind,
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub lat_ribs: u32,
    pub long_ribs: u32,
    /// Out-of-plane wobble of the Klein bottle's transversal curves.
    pub amplitude: f64,
    /// Phase of the wobble in degrees. Fixed at 90.
    pub phase_offset: f64,
}

impl SurfaceParams {
    pub const DEFAULT_OUTER_RADIUS: f64 = 30.0;
    pub const DEFAULT_INNER_RADIUS: f64 = 10.0;
    pub const DEFAULT_LAT_RIBS: u32 = 18;
    pub const DEFAULT_LONG_RIBS: u32 = 36;
    pub const DEFAULT_AMPLITUDE: f64 = 0.25;

    pub fn new(kind: SurfaceKind) -> Self {
        SurfaceParams {
            kind,
            outer_radius: Self::DEFAULT_OUTER_RADIUS,
            inner_radius: Self::DEFAULT_INNER_RADIUS,
            lat_ribs: Self::DEFAULT_LAT_RIBS,
            long_ribs: Self::DEFAULT_LONG_RIBS,
            amplitude: Self::DEFAULT_AMPLITUDE,
            phase_offset: 90.0,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.outer_radius.is_finite() && self.outer_radius > 0.0) {
            return Err(ParamError::OuterRadius(self.outer_radius));
        }
        if self.kind != SurfaceKind::Roman
            && !(self.inner_radius.is_finite()
                && self.inner_radius > 0.0
                && self.inner_radius < self.outer_radius)
        {
            return Err(ParamError::InnerRadius {
                inner: self.inner_radius,
                outer: self.outer_radius,
            });
        }
        if self.lat_ribs < 3 {
            return Err(ParamError::LatRibs(self.lat_ribs));
        }
        if self.long_ribs < 3 {
            return Err(ParamError::LongRibs(self.long_ribs));
        }
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(ParamError::Amplitude(self.amplitude));
        }
        Ok(())
    }
}

/// Torus point: the meridian circle `(r cos u + R, 0, r sin u)` swept about z by `v`.
pub fn torus_point(i: f64, j: f64, p: &SurfaceParams) -> Vec3 {
    let u = i * 360.0 / p.lat_ribs as f64;
    let v = j * 360.0 / p.long_ribs as f64;
    let meridian = Vec3::new(
        p.inner_radius * cos_deg(u) + p.outer_radius,
        0.0,
        p.inner_radius * sin_deg(u),
    );
    rotation(0.0, 0.0, v) * meridian
}

/// One lobe of the Gerono lemniscate, lifted out of the plane by
/// `ampl * cos(90 + beta)` so the two end points separate.
///
/// `alpha` in `[0, 1]` runs the lobe from `beta = 90` to `beta = 270`.
pub fn half_lemniscate(alpha: f64, ampl: f64) -> Vec3 {
    let beta = 90.0 + 180.0 * alpha;
    let (sb, cb) = (sin_deg(beta), cos_deg(beta));
    Vec3::new(cb, sb * cb, ampl * cos_deg(90.0 + beta))
}

/// Klein bottle point: half lemniscates carried along a twisting Möbius path.
/// Period in `i` is `2 * lat_ribs`.
pub fn klein_point(i: f64, j: f64, p: &SurfaceParams) -> Vec3 {
    let a_i = 360.0 * i / p.lat_ribs as f64;
    let a_j = 360.0 * j / p.long_ribs as f64;
    let lobe = half_lemniscate(a_j / 360.0, p.amplitude);
    let pt = Vec3::new(p.outer_radius, 0.0, 0.0)
        + p.inner_radius * (rotation(0.0, 0.0, a_i / 2.0) * lobe);
    let pt = rotation(90.0, 0.0, 0.0) * pt;
    rotation(0.0, 0.0, a_i) * pt
}

/// Roman surface point: the sphere of radius `R` pushed through `(x,y,z) -> (yz, xz, xy)`.
///
/// `u` covers 360 degrees per `lat_ribs` steps but `v` only 180 per
/// `long_ribs`, so the full wireframe grid traces parts of the surface twice.
pub fn roman_point(i: f64, j: f64, p: &SurfaceParams) -> Vec3 {
    let u = i * 360.0 / p.lat_ribs as f64;
    let v = j * 180.0 / p.long_ribs as f64;
    let (cu, su) = (cos_deg(u), sin_deg(u));
    let (cv, sv) = (cos_deg(v), sin_deg(v));
    let sphere = Vec3::new(
        p.outer_radius * cu * cv,
        p.outer_radius * cu * sv,
        p.outer_radius * su,
    );
    steiner_map(&sphere)
}

/// `(x, y, z) -> (yz, xz, xy)`.
pub fn steiner_map(s: &Vec3) -> Vec3 {
    Vec3::new(s.y * s.z, s.x * s.z, s.x * s.y)
}

pub fn surface_point(i: f64, j: f64, p: &SurfaceParams) -> Vec3 {
    match p.kind {
        SurfaceKind::Torus => torus_point(i, j, p),
        SurfaceKind::Klein => klein_point(i, j, p),
        SurfaceKind::Roman => roman_point(i, j, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Vec3, b: &Vec3, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    // Independent rotation about x for column vectors.
    fn rot_x_by_hand(deg: f64, v: &Vec3) -> Vec3 {
        let t = deg.to_radians();
        Vec3::new(v.x, t.cos() * v.y - t.sin() * v.z, t.sin() * v.y + t.cos() * v.z)
    }

    #[test]
    fn degree_trig_is_exact_on_quadrants() {
        for k in -8..8 {
            let d = 90.0 * k as f64;
            assert_eq!(sin_deg(d).abs() + cos_deg(d).abs(), 1.0);
        }
        assert!((sin_deg(30.0) - 0.5).abs() < 1e-15);
        assert!((cos_deg(-60.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(*rotation(0.0, 0.0, 0.0).matrix(), Matrix3::identity());
        let v = rotation(0.0, 0.0, 180.0) * Vec3::new(1.0, 0.0, 0.0);
        assert!(close(&v, &Vec3::new(-1.0, 0.0, 0.0), 1e-12));
        let v = rotation(90.0, 0.0, 0.0) * Vec3::new(0.0, 0.0, -1.0);
        assert!(close(&v, &Vec3::new(0.0, 1.0, 0.0), 1e-12));
        let w = rot_x_by_hand(90.0, &Vec3::new(0.0, 0.0, -1.0));
        assert!(close(&v, &w, 1e-12));
    }

    #[test]
    fn rotation_matches_nalgebra_euler_convention() {
        for &(ax, ay, az) in &[(10.0, 20.0, 30.0), (-75.0, 140.0, 5.0), (0.0, 90.0, 33.0)] {
            let r = rotation(ax, ay, az);
            let reference = nalgebra::Rotation3::from_euler_angles(
                f64::to_radians(ax),
                f64::to_radians(ay),
                f64::to_radians(az),
            );
            assert!((r.matrix() - reference.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_is_orthonormal() {
        let r = rotation(17.0, -123.0, 271.5);
        let m = r.matrix();
        assert!((m.transpose() * m - Matrix3::identity()).norm() < 1e-9);
        assert!((m.determinant() - 1.0).abs() < 1e-9);
        let ab = rotation(0.0, 0.0, 40.0) * rotation(0.0, 0.0, 75.0);
        assert!((ab.matrix() - rotation(0.0, 0.0, 115.0).matrix()).norm() < 1e-9);
    }

    #[test]
    fn torus_examples() {
        let p = SurfaceParams::new(SurfaceKind::Torus);
        assert_eq!(torus_point(0.0, 0.0, &p), Vec3::new(40.0, 0.0, 0.0));
        let p4 = SurfaceParams { lat_ribs: 20, ..p };
        assert!(close(&torus_point(5.0, 0.0, &p4), &Vec3::new(30.0, 0.0, 10.0), 1e-12));
        assert!(close(&torus_point(0.0, 18.0, &p), &Vec3::new(-40.0, 0.0, 0.0), 1e-12));
    }

    #[test]
    fn half_lemniscate_examples() {
        assert!(close(&half_lemniscate(0.0, 0.25), &Vec3::new(0.0, 0.0, -0.25), 1e-15));
        assert!(close(&half_lemniscate(0.5, 0.25), &Vec3::new(-1.0, 0.0, 0.0), 1e-15));
        assert!(close(&half_lemniscate(1.0, 0.25), &Vec3::new(0.0, 0.0, 0.25), 1e-15));
        for k in 0..=20 {
            assert_eq!(half_lemniscate(k as f64 / 20.0, 0.0).z, 0.0);
        }
    }

    #[test]
    fn klein_examples() {
        let p = SurfaceParams::new(SurfaceKind::Klein);
        assert!(close(&klein_point(0.0, 0.0, &p), &Vec3::new(30.0, 2.5, 0.0), 1e-12));
        assert!(close(&klein_point(0.0, 18.0, &p), &Vec3::new(20.0, 0.0, 0.0), 1e-12));
        for j in 0..=36 {
            let j = j as f64;
            assert!(close(&klein_point(36.0, j, &p), &klein_point(0.0, j, &p), 1e-9));
        }
    }

    #[test]
    fn klein_matches_symbolic_evaluation() {
        // Expanded closed form of the composed rotations for a few samples.
        let p = SurfaceParams::new(SurfaceKind::Klein);
        for &(i, j) in &[(1.0, 3.0), (7.5, 20.25), (30.0, 35.0)] {
            let ai = (360.0 * i / 18.0f64).to_radians();
            let beta = (90.0 + 180.0 * (j / 36.0f64)).to_radians();
            let (lx, ly, lz) = (
                beta.cos(),
                beta.sin() * beta.cos(),
                0.25 * (std::f64::consts::FRAC_PI_2 + beta).cos(),
            );
            let h = ai / 2.0;
            let qx = 30.0 + 10.0 * (h.cos() * lx - h.sin() * ly);
            let qy = 10.0 * (h.sin() * lx + h.cos() * ly);
            let qz = 10.0 * lz;
            // Rx(90): (x, y, z) -> (x, -z, y)
            let (rx, ry, rz) = (qx, -qz, qy);
            let expected = Vec3::new(ai.cos() * rx - ai.sin() * ry, ai.sin() * rx + ai.cos() * ry, rz);
            assert!(close(&klein_point(i, j, &p), &expected, 1e-9));
        }
    }

    #[test]
    fn roman_examples() {
        let p = SurfaceParams {
            outer_radius: 1.0,
            ..SurfaceParams::new(SurfaceKind::Roman)
        };
        assert_eq!(roman_point(0.0, 0.0, &p), Vec3::new(0.0, 0.0, 0.0));
        // v = 45 at j = long_ribs / 4
        let q = roman_point(0.0, 9.0, &p);
        assert!(close(&q, &Vec3::new(0.0, 0.0, 0.5), 1e-12));
        let s = 1.0 / 3f64.sqrt();
        let m = steiner_map(&Vec3::new(s, s, s));
        assert!(close(&m, &Vec3::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0), 1e-15));
    }

    #[test]
    fn dispatch() {
        let t = SurfaceParams::new(SurfaceKind::Torus);
        assert_eq!(surface_point(0.0, 0.0, &t), torus_point(0.0, 0.0, &t));
        let k = SurfaceParams::new(SurfaceKind::Klein);
        for j in 0..10 {
            let j = j as f64 * 3.7;
            let d = surface_point(0.5, j, &k) - surface_point(0.5 - 1e-6, j, &k);
            assert!(d.norm() < 1e-3);
        }
    }

    #[test]
    fn parameter_validation() {
        let mut p = SurfaceParams::new(SurfaceKind::Torus);
        assert!(p.validate().is_ok());
        p.inner_radius = 30.0;
        assert!(matches!(p.validate(), Err(ParamError::InnerRadius { .. })));
        p.kind = SurfaceKind::Roman;
        assert!(p.validate().is_ok());
        p.lat_ribs = 2;
        assert_eq!(p.validate(), Err(ParamError::LatRibs(2)));
        let mut k = SurfaceParams::new(SurfaceKind::Klein);
        k.amplitude = -0.1;
        assert!(matches!(k.validate(), Err(ParamError::Amplitude(_))));
    }
}
