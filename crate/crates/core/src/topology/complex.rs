//! Chain complexes of Δ-complexes: ordered simplices whose faces may be
//! glued together, as in the identified squares.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::TopologyError;

/// An ordered simplex given by vertex labels. Labels may repeat once
/// vertices have been identified.
pub type Simplex = Vec<u32>;

/// Signed incidence matrix of `simplices` (columns) against `faces` (rows):
/// `d[s0..sk] = sum_j (-1)^j [s0..^sj..sk]`. Repeated faces accumulate.
pub fn boundary_matrix(simplices: &[Simplex], faces: &[Simplex]) -> Result<IntMatrix, TopologyError> {
    let index: HashMap<&[u32], usize> = faces
        .iter()
        .enumerate()
        .map(|(k, f)| (f.as_slice(), k))
        .collect();
    let mut m = IntMatrix::zeros(faces.len(), simplices.len());
    let mut face = Vec::new();
    for (col, s) in simplices.iter().enumerate() {
        if s.is_empty() {
            return Err(TopologyError::EmptySimplex);
        }
        for j in 0..s.len() {
            face.clear();
            face.extend(s.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x));
            let row = *index
                .get(face.as_slice())
                .ok_or_else(|| TopologyError::MissingFace {
                    simplex: s.clone(),
                    face: face.clone(),
                })?;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            m[(row, col)] += BigInt::from(sign);
        }
    }
    Ok(m)
}

/// Free chain groups `C_0 .. C_dim` with boundary maps `d_k : C_k -> C_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    /// Generator names per degree.
    pub labels: Vec<Vec<String>>,
    /// `boundaries[k - 1]` is `d_k`, of shape `|C_{k-1}| x |C_k|`.
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `d_{k-1} d_k = 0`.
    pub fn new(labels: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self, TopologyError> {
        if labels.is_empty() || boundaries.len() + 1 != labels.len() {
            return Err(TopologyError::Shape(format!(
                "{} degrees of generators need {} boundary maps, got {}",
                labels.len(),
                labels.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let expected = (labels[k].len(), labels[k + 1].len());
            if d.shape() != expected {
                return Err(TopologyError::Shape(format!(
                    "boundary of degree {} is {:?}, expected {:?}",
                    k + 1,
                    d.shape(),
                    expected
                )));
            }
        }
        let c = ChainComplex { labels, boundaries };
        if let Some(k) = c.first_nonzero_square() {
            return Err(TopologyError::NotAComplex(k));
        }
        Ok(c)
    }

    pub fn dimension(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, Vec::len)
    }

    /// `d_k` for any `k`; the zero map outside `1..=dimension`.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k >= 1 && k <= self.dimension() {
            self.boundaries[k - 1].clone()
        } else {
            let source = self.rank(k);
            let target = if k == 0 { 0 } else { self.rank(k - 1) };
            IntMatrix::zeros(target, source)
        }
    }

    /// Smallest `k` with `d_{k-1} d_k != 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (2..=self.dimension()).find(|&k| {
            let dd = self.boundaries[k - 2]
                .mul(&self.boundaries[k - 1])
                .expect("shapes checked");
            !dd.is_zero()
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.len() as i64 } else { -(g.len() as i64) })
            .sum()
    }

    /// Builds the complex of a simplicial or Δ-complex listed by ordered
    /// vertex labels, `cells[k]` holding the k-simplices.
    pub fn from_simplices(cells: &[Vec<Simplex>]) -> Result<Self, TopologyError> {
        let labels = cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        let names: Vec<String> = s.iter().map(ToString::to_string).collect();
                        format!("[{}]", names.join(","))
                    })
                    .collect()
            })
            .collect();
        let boundaries = (1..cells.len())
            .map(|k| boundary_matrix(&cells[k], &cells[k - 1]))
            .collect::<Result<_, _>>()?;
        Self::new(labels, boundaries)
    }
}

/// A Δ-complex given cell by cell: each k-cell (k >= 1) lists its k + 1
/// faces by index into the (k-1)-cells, face j being the one opposite
/// vertex j.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaComplex {
    pub names: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl DeltaComplex {
    pub fn new(vertices: &[&str]) -> Self {
        DeltaComplex {
            names: vec![vertices.iter().map(|s| s.to_string()).collect()],
            faces: vec![Vec::new()],
        }
    }

    /// Adds a cell of dimension `faces.len() - 1`; returns its index.
    pub fn cell(&mut self, name: &str, faces: &[usize]) -> usize {
        let k = faces.len() - 1;
        while self.names.len() <= k {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        self.names[k].push(name.to_string());
        self.faces[k].push(faces.to_vec());
        self.names[k].len() - 1
    }

    pub fn chain_complex(&self) -> Result<ChainComplex, TopologyError> {
        let mut boundaries = Vec::new();
        for k in 1..self.names.len() {
            let mut d = IntMatrix::zeros(self.names[k - 1].len(), self.names[k].len());
            for (col, faces) in self.faces[k].iter().enumerate() {
                for (j, &f) in faces.iter().enumerate() {
                    if f >= self.names[k - 1].len() {
                        return Err(TopologyError::Shape(format!(
                            "cell {} refers to missing face {f} of degree {}",
                            self.names[k][col],
                            k - 1
                        )));
                    }
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    d[(f, col)] += BigInt::from(sign);
                }
            }
            boundaries.push(d);
        }
        ChainComplex::new(self.names.clone(), boundaries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceName {
    Circle,
    Sphere,
    Torus,
    KleinBottle,
    ProjectivePlane,
}

impl SpaceName {
    pub const ALL: [SpaceName; 5] = [
        SpaceName::Circle,
        SpaceName::Sphere,
        SpaceName::Torus,
        SpaceName::KleinBottle,
        SpaceName::ProjectivePlane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceName::Circle => "circle",
            SpaceName::Sphere => "sphere",
            SpaceName::Torus => "torus",
            SpaceName::KleinBottle => "klein",
            SpaceName::ProjectivePlane => "rp2",
        }
    }
}

impl std::str::FromStr for SpaceName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpaceName::ALL
            .into_iter()
            .find(|n| n.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown space '{s}' (expected circle, sphere, torus, klein or rp2)"))
    }
}

impl std::fmt::Display for SpaceName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The identified square split along a diagonal into two triangles.
///
/// Corners are bl, br, tl, tr. Bottom edge `a` runs bl -> br and left edge
/// `b` runs bl -> tl. `flip_top` glues the top edge to `a` reversed,
/// `flip_side` does the same for the right edge and `b`.
fn identified_square(flip_top: bool, flip_side: bool) -> DeltaComplex {
    match (flip_top, flip_side) {
        (false, false) => {
            // torus: diagonal c from bl to tr
            let mut x = DeltaComplex::new(&["v"]);
            let a = x.cell("a", &[0, 0]);
            let b = x.cell("b", &[0, 0]);
            let c = x.cell("c", &[0, 0]);
            // [bl, br, tr]: faces [br,tr]=b, [bl,tr]=c, [bl,br]=a
            x.cell("U", &[b, c, a]);
            // [bl, tl, tr]: faces [tl,tr]=a, [bl,tr]=c, [bl,tl]=b
            x.cell("L", &[a, c, b]);
            x
        }
        (true, false) => {
            // Klein bottle: diagonal c from br to tl
            let mut x = DeltaComplex::new(&["v"]);
            let a = x.cell("a", &[0, 0]);
            let b = x.cell("b", &[0, 0]);
            let c = x.cell("c", &[0, 0]);
            // [bl, br, tl]: faces [br,tl]=c, [bl,tl]=b, [bl,br]=a
            x.cell("U", &[c, b, a]);
            // [br, tr, tl]: faces [tr,tl]=a, [br,tl]=c, [br,tr]=b
            x.cell("L", &[a, c, b]);
            x
        }
        (true, true) => {
            // projective plane: vertices P = {bl, tr}, Q = {br, tl}
            let mut x = DeltaComplex::new(&["P", "Q"]);
            // an edge lists faces [end, start]
            let a = x.cell("a", &[1, 0]);
            let b = x.cell("b", &[1, 0]);
            let c = x.cell("c", &[1, 1]);
            // [bl, br, tl]: faces [br,tl]=c, [bl,tl]=b, [bl,br]=a
            x.cell("U", &[c, b, a]);
            // [tr, br, tl]: faces [br,tl]=c, [tr,tl]=a, [tr,br]=b
            x.cell("L", &[c, a, b]);
            x
        }
        (false, true) => identified_square(true, false),
    }
}

/// Boundary of the octahedron with vertices +x, -x, +y, -y, +z, -z = 0..5.
fn octahedron() -> Vec<Vec<Simplex>> {
    let vertices: Vec<Simplex> = (0..6).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    for a in 0..6u32 {
        for b in a + 1..6 {
            if a / 2 != b / 2 {
                edges.push(vec![a, b]);
            }
        }
    }
    let mut triangles = Vec::new();
    for x in 0..2 {
        for y in 2..4 {
            for z in 4..6 {
                triangles.push(vec![x, y, z]);
            }
        }
    }
    vec![vertices, edges, triangles]
}

pub fn builtin_complex(name: SpaceName) -> ChainComplex {
    let built = match name {
        SpaceName::Circle => {
            let mut x = DeltaComplex::new(&["v"]);
            x.cell("a", &[0, 0]);
            x.chain_complex()
        }
        SpaceName::Sphere => ChainComplex::from_simplices(&octahedron()),
        SpaceName::Torus => identified_square(false, false).chain_complex(),
        SpaceName::KleinBottle => identified_square(true, false).chain_complex(),
        SpaceName::ProjectivePlane => identified_square(true, true).chain_complex(),
    };
    built.expect("built-in complexes are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(m: &IntMatrix, c: usize) -> Vec<i64> {
        m.column(c).iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn edge_boundary_is_end_minus_start() {
        let faces = vec![vec![0], vec![1], vec![2]];
        let m = boundary_matrix(&[vec![0, 1]], &faces).unwrap();
        assert_eq!(col(&m, 0), vec![-1, 1, 0]);
        let path = boundary_matrix(&[vec![0, 1], vec![1, 2]], &faces).unwrap();
        let sum: Vec<i64> = (0..3).map(|r| col(&path, 0)[r] + col(&path, 1)[r]).collect();
        assert_eq!(sum, vec![-1, 0, 1]);
    }

    #[test]
    fn triangle_boundary() {
        let edges = vec![vec![0, 1], vec![0, 2], vec![1, 2]];
        let m = boundary_matrix(&[vec![0, 1, 2]], &edges).unwrap();
        assert_eq!(col(&m, 0), vec![1, -1, 1]);
    }

    #[test]
    fn missing_face_is_reported() {
        let err = boundary_matrix(&[vec![0, 1, 2]], &[vec![0, 1], vec![1, 2]]).unwrap_err();
        assert!(matches!(err, TopologyError::MissingFace { ref face, .. } if face == &vec![0, 2]));
    }

    #[test]
    fn repeated_faces_accumulate() {
        // a loop [0, 0] has boundary [0] - [0] = 0
        let m = boundary_matrix(&[vec![0, 0]], &[vec![0]]).unwrap();
        assert_eq!(col(&m, 0), vec![0]);
        // [0, 0, 1]: faces [0,1] - [0,1] + [0,0]
        let m = boundary_matrix(&[vec![0, 0, 1]], &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(col(&m, 0), vec![0, 1]);
    }

    #[test]
    fn builtin_shapes() {
        let circle = builtin_complex(SpaceName::Circle);
        assert_eq!(circle.boundaries, vec![IntMatrix::zeros(1, 1)]);
        let sizes = |c: &ChainComplex| c.labels.iter().map(Vec::len).collect::<Vec<_>>();
        assert_eq!(sizes(&builtin_complex(SpaceName::Torus)), vec![1, 3, 2]);
        assert_eq!(sizes(&builtin_complex(SpaceName::KleinBottle)), vec![1, 3, 2]);
        assert_eq!(sizes(&builtin_complex(SpaceName::ProjectivePlane)), vec![2, 3, 2]);
        assert_eq!(sizes(&builtin_complex(SpaceName::Sphere)), vec![6, 12, 8]);
        for name in SpaceName::ALL {
            assert_eq!(builtin_complex(name).first_nonzero_square(), None);
        }
    }

    #[test]
    fn torus_square_boundary_cancels() {
        // both triangles have boundary a + b - c, so U - L (the whole
        // square, boundary word a b a^-1 b^-1) has zero boundary
        let d2 = builtin_complex(SpaceName::Torus).boundary(2);
        assert_eq!(col(&d2, 0), vec![1, 1, -1]);
        assert_eq!(col(&d2, 1), col(&d2, 0));
    }

    #[test]
    fn klein_and_rp2_boundaries() {
        let k = builtin_complex(SpaceName::KleinBottle).boundary(2);
        assert_eq!((col(&k, 0), col(&k, 1)), (vec![1, -1, 1], vec![1, 1, -1]));
        let p = builtin_complex(SpaceName::ProjectivePlane);
        assert_eq!(col(&p.boundary(1), 0), vec![-1, 1]);
        assert_eq!(col(&p.boundary(1), 2), vec![0, 0]);
        assert_eq!(col(&p.boundary(2), 1), vec![-1, 1, 1]);
    }

    #[test]
    fn complex_shape_errors() {
        let bad = ChainComplex::new(vec![vec!["v".into()], vec!["e".into()]], vec![IntMatrix::zeros(2, 1)]);
        assert!(matches!(bad, Err(TopologyError::Shape(_))));
        // d1 d2 != 0
        let labels = vec![
            vec!["p".to_string(), "q".to_string()],
            vec!["e".to_string()],
            vec!["t".to_string()],
        ];
        let d1 = IntMatrix::from_i64(2, 1, &[-1, 1]);
        let d2 = IntMatrix::from_i64(1, 1, &[1]);
        assert!(matches!(
            ChainComplex::new(labels, vec![d1, d2]),
            Err(TopologyError::NotAComplex(2))
        ));
    }

    #[test]
    fn euler_characteristics() {
        let chi: Vec<i64> = SpaceName::ALL
            .iter()
            .map(|&n| builtin_complex(n).euler_characteristic())
            .collect();
        assert_eq!(chi, vec![0, 2, 0, 0, 1]);
    }
}
