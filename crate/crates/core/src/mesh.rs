//! Indexed triangle meshes and watertightness validation.

use serde::Serialize;
use thiserror::Error;

use crate::geom::Vec3;

/// Triangles below this area (mm²) are counted as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("triangle {triangle} references vertex {index} but the mesh has {vertex_count} vertices")]
    IndexOutOfRange {
        triangle: usize,
        index: u32,
        vertex_count: usize,
    },
    #[error("triangle {0} repeats a vertex index")]
    RepeatedIndex(usize),
    #[error("vertex {0} is not finite")]
    NonFinite(usize),
    #[error("component id list has {got} entries, expected {expected}")]
    ComponentIds { got: usize, expected: usize },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
    /// Per-triangle labels of the part each triangle came from.
    pub component_ids: Vec<u32>,
}

impl TriangleMesh {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a mesh whose triangles all belong to component 0.
    pub fn from_parts(vertices: Vec<Vec3>, triangles: Vec<[u32; 3]>) -> Result<Self, MeshError> {
        let component_ids = vec![0; triangles.len()];
        let mesh = TriangleMesh {
            vertices,
            triangles,
            component_ids,
        };
        mesh.check()?;
        Ok(mesh)
    }

    /// Index, finiteness and label checks. Area is left to [`validate`].
    pub fn check(&self) -> Result<(), MeshError> {
        if self.component_ids.len() != self.triangles.len() {
            return Err(MeshError::ComponentIds {
                got: self.component_ids.len(),
                expected: self.triangles.len(),
            });
        }
        if let Some(bad) = self.vertices.iter().position(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(MeshError::NonFinite(bad));
        }
        let n = self.vertices.len();
        for (t, tri) in self.triangles.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i as usize >= n) {
                return Err(MeshError::IndexOutOfRange {
                    triangle: t,
                    index,
                    vertex_count: n,
                });
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(MeshError::RepeatedIndex(t));
            }
        }
        Ok(())
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn corners(&self, t: usize) -> [Vec3; 3] {
        let [a, b, c] = self.triangles[t];
        [
            self.vertices[a as usize],
            self.vertices[b as usize],
            self.vertices[c as usize],
        ]
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        0.5 * (b - a).cross(&(c - a)).norm()
    }

    /// Appends `other`, offsetting its indices and relabelling all of its
    /// triangles with `component`.
    pub fn append(&mut self, other: &TriangleMesh, component: u32) {
        let offset = self.vertices.len() as u32;
        self.vertices.extend_from_slice(&other.vertices);
        self.triangles.extend(
            other
                .triangles
                .iter()
                .map(|t| [t[0] + offset, t[1] + offset, t[2] + offset]),
        );
        self.component_ids
            .extend(std::iter::repeat_n(component, other.triangles.len()));
    }

    /// Reverses the winding of one triangle.
    pub fn flip_triangle(&mut self, t: usize) {
        self.triangles[t].swap(1, 2);
    }

    pub fn bounding_box(&self) -> Option<(Vec3, Vec3)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), v| {
            (lo.inf(v), hi.sup(v))
        }))
    }

    /// Signed volume enclosed by the triangles (positive for outward winding).
    pub fn signed_volume(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let [a, b, c] = self.corners(t);
                a.dot(&b.cross(&c)) / 6.0
            })
            .sum()
    }

    /// Labels triangles by connectivity through shared vertices. Labels are
    /// numbered in order of first appearance.
    pub fn connected_components(&self) -> (usize, Vec<u32>) {
        let mut dsu = DisjointSets::new(self.vertices.len());
        for t in &self.triangles {
            dsu.union(t[0] as usize, t[1] as usize);
            dsu.union(t[0] as usize, t[2] as usize);
        }
        let mut label_of_root = vec![u32::MAX; self.vertices.len()];
        let mut next = 0u32;
        let labels = self
            .triangles
            .iter()
            .map(|t| {
                let root = dsu.find(t[0] as usize);
                if label_of_root[root] == u32::MAX {
                    label_of_root[root] = next;
                    next += 1;
                }
                label_of_root[root]
            })
            .collect();
        (next as usize, labels)
    }
}

struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshReport {
    pub component_count: usize,
    pub watertight_per_component: Vec<bool>,
    pub euler_characteristic_per_component: Vec<i64>,
    pub bbox_min: [f64; 3],
    pub bbox_max: [f64; 3],
    pub triangle_count: usize,
    pub degenerate_count: usize,
    /// Edges used by a single triangle.
    pub boundary_edge_count: usize,
    /// Edges used more than twice, or twice in the same direction.
    pub nonmanifold_edge_count: usize,
}

impl MeshReport {
    pub fn all_watertight(&self) -> bool {
        self.watertight_per_component.iter().all(|&w| w)
    }

    pub fn watertight_count(&self) -> usize {
        self.watertight_per_component.iter().filter(|&&w| w).count()
    }

    pub fn all_spheres(&self) -> bool {
        self.euler_characteristic_per_component.iter().all(|&x| x == 2)
    }
}

/// Checks every connected component for closedness and consistent winding.
///
/// A component is watertight iff each undirected edge is used by exactly two
/// of its triangles, traversed in opposite directions, and none of its
/// triangles repeats a vertex.
pub fn validate(mesh: &TriangleMesh) -> MeshReport {
    let (component_count, labels) = mesh.connected_components();

    // Bucket triangles by component.
    let mut start = vec![0usize; component_count + 1];
    for &l in &labels {
        start[l as usize + 1] += 1;
    }
    for c in 0..component_count {
        start[c + 1] += start[c];
    }
    let mut cursor = start.clone();
    let mut order = vec![0u32; labels.len()];
    for (t, &l) in labels.iter().enumerate() {
        order[cursor[l as usize]] = t as u32;
        cursor[l as usize] += 1;
    }

    let mut watertight = Vec::with_capacity(component_count);
    let mut euler = Vec::with_capacity(component_count);
    let mut boundary_edge_count = 0;
    let mut nonmanifold_edge_count = 0;
    let mut edges: Vec<(u32, u32, bool)> = Vec::new();
    let mut verts: Vec<u32> = Vec::new();

    for c in 0..component_count {
        edges.clear();
        verts.clear();
        let tris = &order[start[c]..start[c + 1]];
        let mut repeated = false;
        for &t in tris {
            let tri = mesh.triangles[t as usize];
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                repeated = true;
            }
            verts.extend_from_slice(&tri);
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                edges.push((a.min(b), a.max(b), a < b));
            }
        }
        verts.sort_unstable();
        verts.dedup();
        edges.sort_unstable();

        let mut closed = !repeated;
        let mut edge_count = 0i64;
        let mut k = 0;
        while k < edges.len() {
            let key = (edges[k].0, edges[k].1);
            let mut end = k;
            while end < edges.len() && (edges[end].0, edges[end].1) == key {
                end += 1;
            }
            edge_count += 1;
            match end - k {
                1 => {
                    boundary_edge_count += 1;
                    closed = false;
                }
                // sorted, so opposite directions show up as (false, true)
                2 if edges[k].2 != edges[k + 1].2 => {}
                _ => {
                    nonmanifold_edge_count += 1;
                    closed = false;
                }
            }
            k = end;
        }
        watertight.push(closed);
        euler.push(verts.len() as i64 - edge_count + tris.len() as i64);
    }

    let degenerate_count = (0..mesh.triangles.len())
        .filter(|&t| {
            let tri = mesh.triangles[t];
            let area = mesh.triangle_area(t);
            tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] || area.is_nan() || area <= DEGENERATE_AREA
        })
        .count();

    let (lo, hi) = mesh
        .bounding_box()
        .unwrap_or((Vec3::zeros(), Vec3::zeros()));

    MeshReport {
        component_count,
        watertight_per_component: watertight,
        euler_characteristic_per_component: euler,
        bbox_min: [lo.x, lo.y, lo.z],
        bbox_max: [hi.x, hi.y, hi.z],
        triangle_count: mesh.triangles.len(),
        degenerate_count,
        boundary_edge_count,
        nonmanifold_edge_count,
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::tetrahedron;
    use super::*;

    #[test]
    fn tetrahedron_is_closed() {
        let m = tetrahedron();
        assert!(m.signed_volume() > 0.0);
        let r = validate(&m);
        assert_eq!(r.component_count, 1);
        assert!(r.all_watertight());
        assert_eq!(r.euler_characteristic_per_component, vec![2]);
        assert_eq!(r.degenerate_count, 0);
        assert_eq!(r.bbox_min, [-1.0, -1.0, -1.0]);
    }

    #[test]
    fn open_tetrahedron_has_three_boundary_edges() {
        let mut m = tetrahedron();
        m.triangles.pop();
        m.component_ids.pop();
        let r = validate(&m);
        assert!(!r.all_watertight());
        assert_eq!(r.boundary_edge_count, 3);
        assert_eq!(r.euler_characteristic_per_component, vec![1]);
    }

    #[test]
    fn flipped_triangle_breaks_watertightness() {
        let mut m = tetrahedron();
        m.flip_triangle(2);
        let r = validate(&m);
        assert!(!r.all_watertight());
        assert_eq!(r.nonmanifold_edge_count, 3);
    }

    #[test]
    fn components_follow_shared_vertices() {
        let t = tetrahedron();
        let mut m = TriangleMesh::new();
        m.append(&t, 0);
        m.append(&t, 1);
        let r = validate(&m);
        assert_eq!(r.component_count, 2);
        assert_eq!(r.watertight_per_component, vec![true, true]);
        assert_eq!(r.triangle_count, 8);
    }

    #[test]
    fn check_rejects_bad_indices() {
        let v = vec![Vec3::zeros(), Vec3::x(), Vec3::y()];
        assert!(matches!(
            TriangleMesh::from_parts(v.clone(), vec![[0, 1, 3]]),
            Err(MeshError::IndexOutOfRange { index: 3, .. })
        ));
        assert_eq!(
            TriangleMesh::from_parts(v, vec![[0, 1, 1]]),
            Err(MeshError::RepeatedIndex(0))
        );
    }

    #[test]
    fn degenerate_triangles_are_counted() {
        let v = vec![Vec3::zeros(), Vec3::x(), Vec3::new(2.0, 0.0, 0.0)];
        let m = TriangleMesh::from_parts(v, vec![[0, 1, 2]]).unwrap();
        assert_eq!(validate(&m).degenerate_count, 1);
    }

    #[test]
    fn empty_mesh_report() {
        let r = validate(&TriangleMesh::new());
        assert_eq!(r.component_count, 0);
        assert!(r.all_watertight());
        assert_eq!(r.triangle_count, 0);
    }
}
