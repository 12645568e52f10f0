//! Integer chain complexes, Smith normal form and homology.

mod complex;
mod homology;
mod matrix;
mod snf;

use thiserror::Error;

pub use complex::{boundary_matrix, builtin_complex, ChainComplex, DeltaComplex, Simplex, SpaceName};
pub use homology::{format_group, homology, homology_all, verify_exact, AbelianGroup, ExactnessVerdict};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("face {face:?} of simplex {simplex:?} is not in the face list")]
    MissingFace { simplex: Vec<u32>, face: Vec<u32> },
    #[error("simplices need at least one vertex")]
    EmptySimplex,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary maps compose to nonzero at degree {0}")]
    NotAComplex(usize),
    #[error("degree {k} is outside 0..={dimension}")]
    DegreeOutOfRange { k: usize, dimension: usize },
}
