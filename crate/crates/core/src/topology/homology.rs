use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::complex::ChainComplex;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::TopologyError;

/// `Z^rank + Z/t_1 + ... + Z/t_k`, each `t_i >= 2` dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn with_torsion(rank: usize, torsion: &[u64]) -> Self {
        AbelianGroup {
            rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_group(self))
    }
}

/// `0`, `Z`, `Z^r`, with ` + Z/d` per torsion coefficient.
pub fn format_group(g: &AbelianGroup) -> String {
    let mut parts = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// `ker outgoing / img incoming` where `outgoing * incoming == 0`.
fn subquotient(incoming: &IntMatrix, outgoing: &IntMatrix) -> AbelianGroup {
    let dim = outgoing.cols();
    let out_rank = smith_normal_form(outgoing).rank();
    let inc = smith_normal_form(incoming);
    AbelianGroup {
        rank: dim - out_rank - inc.rank(),
        torsion: inc.torsion(),
    }
}

/// `H_k = ker d_k / img d_{k+1}`, with `d_0` and `d_{dim+1}` zero.
pub fn homology(c: &ChainComplex, k: usize) -> Result<AbelianGroup, TopologyError> {
    if k > c.dimension() {
        return Err(TopologyError::DegreeOutOfRange { k, dimension: c.dimension() });
    }
    Ok(subquotient(&c.boundary(k + 1), &c.boundary(k)))
}

/// `H_0 .. H_dim`.
pub fn homology_all(c: &ChainComplex) -> Vec<AbelianGroup> {
    (0..=c.dimension())
        .map(|k| homology(c, k).expect("degree in range"))
        .collect()
}

/// Exactness at one interior object of a sequence of maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessVerdict {
    /// Index of the object; the sequence's first object is 0.
    pub position: usize,
    /// `img ⊆ ker`: the two maps compose to zero.
    pub composes_to_zero: bool,
    /// `rank(incoming) == nullity(outgoing)` over the rationals.
    pub ranks_match: bool,
    /// `ker / img` when the composition is zero.
    pub quotient: Option<AbelianGroup>,
    pub exact: bool,
}

/// Checks `img f_t = ker f_{t+1}` at every interior object of the sequence
/// `X_0 -f_0-> X_1 -f_1-> ... -> X_n`. Each map is a matrix with
/// `rows = dim target`, `cols = dim source`.
///
/// Equal ranks alone do not give exactness: `ker / img` may still carry
/// torsion, which the Smith form of the incoming map exposes.
pub fn verify_exact(maps: &[IntMatrix]) -> Result<Vec<ExactnessVerdict>, TopologyError> {
    for (t, pair) in maps.windows(2).enumerate() {
        if pair[1].cols() != pair[0].rows() {
            return Err(TopologyError::Shape(format!(
                "map {} has target of dimension {} but map {} has source of dimension {}",
                t,
                pair[0].rows(),
                t + 1,
                pair[1].cols()
            )));
        }
    }
    let mut verdicts = Vec::new();
    for (t, pair) in maps.windows(2).enumerate() {
        let (incoming, outgoing) = (&pair[0], &pair[1]);
        let composes_to_zero = outgoing.mul(incoming).expect("shapes checked").is_zero();
        let inc = smith_normal_form(incoming);
        let nullity = outgoing.cols() - smith_normal_form(outgoing).rank();
        let ranks_match = inc.rank() == nullity;
        let quotient = composes_to_zero.then(|| AbelianGroup {
            rank: nullity - inc.rank(),
            torsion: inc.torsion(),
        });
        let exact = quotient.as_ref().is_some_and(AbelianGroup::is_trivial);
        verdicts.push(ExactnessVerdict {
            position: t + 1,
            composes_to_zero,
            ranks_match,
            quotient,
            exact,
        });
    }
    Ok(verdicts)
}

impl AbelianGroup {
    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t)
    }
}
