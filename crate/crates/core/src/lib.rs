//! Printable wireframes of the torus, Klein bottle and projective plane,
//! and integer homology of the identified squares they come from.
//!
//! - [`geom`]: surface parametrizations on a fractional parameter grid.
//! - [`wireframe`]: capsule plans along grid lines and their tessellation.
//! - [`mesh`] and [`stl`]: indexed meshes, watertightness checks, STL I/O.
//! - [`topology`]: chain complexes, Smith normal form, homology, exactness.

pub mod geom;
pub mod mesh;
pub mod stl;
pub mod topology;
pub mod wireframe;

pub use geom::{SurfaceKind, SurfaceParams, Vec3};
pub use mesh::{validate, MeshReport, TriangleMesh};
pub use stl::{read_stl, write_stl, StlMode};
pub use wireframe::{build_wireframe, plan_segments, WireframeSpec};
