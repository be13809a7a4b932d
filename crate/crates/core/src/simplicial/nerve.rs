use std::sync::Arc;

use num_bigint::BigInt;

use super::TruncSimpAb;
use crate::fincat::{enumerate_chains, Chain, ChainIndex, FinCat};
use crate::zlinalg::{ChainComplex, IntMatrix};

/// The nerve of a finite category up to degree `trunc`, with face and
/// degeneracy maps as index tables.
#[derive(Clone, Debug)]
pub struct NerveTrunc {
    base: Arc<FinCat>,
    simplices: Vec<Vec<Chain>>,
    /// `faces[n][i][k]` is the index of `d_i` of simplex `k` in degree `n − 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][j][k]` is the index of `s_j` of simplex `k` in degree `n + 1`.
    degens: Vec<Vec<Vec<usize>>>,
}

pub fn nerve_trunc(a: Arc<FinCat>, n: usize) -> NerveTrunc {
    let simplices: Vec<Vec<Chain>> = (0..=n).map(|k| enumerate_chains(&a, k, false)).collect();
    let index: Vec<ChainIndex> = simplices.iter().map(|s| ChainIndex::new(s)).collect();
    let faces = (0..=n)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            (0..=k)
                .map(|i| simplices[k].iter().map(|ch| index[k - 1].get(&ch.face(&a, i)).unwrap()).collect())
                .collect()
        })
        .collect();
    let degens = (0..=n)
        .map(|k| {
            if k == n {
                return Vec::new();
            }
            (0..=k)
                .map(|j| simplices[k].iter().map(|ch| index[k + 1].get(&ch.degeneracy(&a, j)).unwrap()).collect())
                .collect()
        })
        .collect();
    NerveTrunc { base: a, simplices, faces, degens }
}

impl NerveTrunc {
    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn trunc(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, n: usize) -> &[Chain] {
        &self.simplices[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &[usize] {
        &self.degens[n][j]
    }

    /// Simplices containing no identity arrow.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.simplices[n].len()).filter(|&k| !self.simplices[n][k].has_identity(&self.base)).collect()
    }

    /// `ℤ^(N A)`, the free simplicial abelian group on the nerve.
    pub fn to_simp_ab(&self) -> TruncSimpAb {
        let perm = |rows: usize, map: &[usize]| {
            IntMatrix::from_triplets(rows, map.len(), map.iter().enumerate().map(|(k, &t)| (t, k, 1i64)))
        };
        let ranks: Vec<usize> = self.simplices.iter().map(Vec::len).collect();
        let t = self.trunc();
        let faces = (0..=t).map(|n| self.faces[n].iter().map(|m| perm(ranks[n - 1], m)).collect()).collect();
        let degens = (0..=t).map(|n| self.degens[n].iter().map(|m| perm(ranks[n + 1], m)).collect()).collect();
        TruncSimpAb::unchecked(ranks, faces, degens).expect("nerve structure maps have matching sizes")
    }
}

/// The chain complex of the nerve. Unnormalized: all chains with
/// `d = Σ (−1)^i d_i`. Normalized: identity-free chains, with faces that
/// become degenerate dropped.
pub fn nerve_complex(a: &FinCat, n: usize, normalized: bool) -> ChainComplex {
    let simplices: Vec<Vec<Chain>> = (0..=n).map(|k| enumerate_chains(a, k, normalized)).collect();
    let index: Vec<ChainIndex> = simplices.iter().map(|s| ChainIndex::new(s)).collect();
    let diffs = (1..=n)
        .map(|k| {
            let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
            for (col, ch) in simplices[k].iter().enumerate() {
                for i in 0..=k {
                    if let Some(row) = index[k - 1].get(&ch.face(a, i)) {
                        triplets.push((row, col, BigInt::from(if i % 2 == 0 { 1 } else { -1 })));
                    }
                }
            }
            IntMatrix::from_triplets(simplices[k - 1].len(), simplices[k].len(), triplets)
        })
        .collect();
    ChainComplex::new(simplices.iter().map(Vec::len).collect(), diffs).expect("nerve differential squares to zero")
}
