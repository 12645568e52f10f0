//! Brute-force oracles used by the test suites. Nothing here shares code
//! with the library's Smith normal form or homology routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Plain dense integer matrix as nested rows.
pub type Rows = Vec<Vec<BigInt>>;

pub fn rows_from_i64(m: &[Vec<i64>]) -> Rows {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &Rows) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

/// Rank over the rationals, by integer row reduction.
pub fn rank_q(m: &Rows) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let (f, g) = (a[rank][c].clone(), a[r][c].clone());
                let pivot = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x * &f - p * &g;
                }
                let content = a[r].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                if !content.is_zero() {
                    for x in a[r].iter_mut() {
                        *x /= &content;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the field with `p` elements.
pub fn rank_mod_p(m: &Rows, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = x.mod_floor(&pb);
                    u64::try_from(v).unwrap()
                })
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: u64| -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (x % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = *x * s % p;
        }
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, q) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * q % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all `k x k` minors (zero if they all vanish).
pub fn minors_gcd(m: &Rows, k: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if k == 0 {
        return BigInt::from(1);
    }
    let mut g = BigInt::zero();
    let row_sets = subsets(rows, k);
    let col_sets = subsets(cols, k);
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Rows = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            g = g.gcd(&det(&sub));
            if g == BigInt::from(1) {
                return g;
            }
        }
    }
    g.abs()
}

/// Homology of one degree as seen by rank computations alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyOracle {
    pub betti: usize,
    /// Order of the torsion subgroup.
    pub torsion_order: BigInt,
    /// Number of torsion summands of order divisible by 2 and by 3.
    pub torsion_mod2: usize,
    pub torsion_mod3: usize,
}

/// `H_k` from `d_k` (outgoing, `n_{k-1} x n_k`) and `d_{k+1}` (incoming,
/// `n_k x n_{k+1}`): Betti number from rational ranks, torsion order from
/// the gcd of maximal nonvanishing minors of `d_{k+1}`, and p-torsion counts
/// from the rank drop modulo p.
pub fn homology_oracle(n_k: usize, outgoing: &Rows, incoming: &Rows) -> HomologyOracle {
    let out_rank = if outgoing.is_empty() { 0 } else { rank_q(outgoing) };
    let in_rank = rank_q(incoming);
    HomologyOracle {
        betti: n_k - out_rank - in_rank,
        torsion_order: minors_gcd(incoming, in_rank),
        torsion_mod2: in_rank - rank_mod_p(incoming, 2),
        torsion_mod3: in_rank - rank_mod_p(incoming, 3),
    }
}

/// A random Δ-complex as ordered vertex tuples per degree, closed under
/// faces. Tuples come from random simplices on `vertices` labels pushed
/// through a random relabelling, so labels may repeat within a tuple.
pub fn random_delta_complex<R: Rng>(rng: &mut R, dimension: usize, vertices: u32, tops: usize) -> Vec<Vec<Vec<u32>>> {
    let merge: Vec<u32> = (0..vertices).map(|_| rng.gen_range(0..vertices)).collect();
    let mut levels: Vec<Vec<Vec<u32>>> = vec![Vec::new(); dimension + 1];
    let mut labels: Vec<u32> = (0..vertices).collect();
    for _ in 0..tops {
        labels.shuffle(rng);
        let mut s: Vec<u32> = labels[..dimension + 1].to_vec();
        s.sort_unstable();
        let tuple: Vec<u32> = s.iter().map(|&v| merge[v as usize]).collect();
        levels[dimension].push(tuple);
    }
    for k in (1..=dimension).rev() {
        let faces: Vec<Vec<u32>> = levels[k]
            .iter()
            .flat_map(|s| {
                (0..s.len()).map(move |j| {
                    let mut f = s.clone();
                    f.remove(j);
                    f
                })
            })
            .collect();
        levels[k - 1].extend(faces);
    }
    for level in levels.iter_mut() {
        let mut seen = std::collections::HashSet::new();
        level.retain(|s| seen.insert(s.clone()));
        level.shuffle(rng);
    }
    levels
}
