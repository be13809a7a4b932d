use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::HomError;
use crate::fincat::{enumerate_chains, Chain, ChainIndex, FinCat};
use crate::presheaf::AbPresheaf;
use crate::zlinalg::{ChainComplex, FgAbGroup, IntMatrix};

/// The simplicial replacement complex `⊕_{φ : Δ_n → A} X(φ(n))`.
#[derive(Clone, Debug)]
pub struct BkComplex {
    pub base: Arc<FinCat>,
    pub coeff: AbPresheaf,
    pub trunc: usize,
    pub normalized: bool,
    /// Chains indexing the summands in each degree, in enumeration order.
    pub chains: Vec<Vec<Chain>>,
    /// `offsets[n][k]` is where the summand of `chains[n][k]` starts; the
    /// last entry is the total rank.
    pub offsets: Vec<Vec<usize>>,
    pub complex: ChainComplex,
}

impl BkComplex {
    pub fn index(&self, n: usize) -> ChainIndex {
        ChainIndex::new(&self.chains[n])
    }

    pub fn homology(&self) -> Vec<FgAbGroup> {
        self.complex.homology_all()
    }
}

pub(crate) fn chain_offsets(base: &FinCat, x: &AbPresheaf, chains: &[Chain]) -> Vec<usize> {
    let mut out = Vec::with_capacity(chains.len() + 1);
    let mut total = 0;
    for ch in chains {
        out.push(total);
        total += x.rank(ch.last(base));
    }
    out.push(total);
    out
}

/// Ranks of the `bk_complex` degrees `0..=n`, counted without building chains.
pub fn bk_generator_counts(x: &AbPresheaf, n: usize, normalized: bool) -> Vec<u128> {
    let c = x.base();
    // ending[b] = number of chains of the current length ending at b
    let mut ending = vec![1u128; c.object_count()];
    let weigh = |ending: &[u128]| {
        ending.iter().enumerate().fold(0u128, |acc, (b, &k)| acc.saturating_add(k.saturating_mul(x.rank(b) as u128)))
    };
    let mut out = vec![weigh(&ending)];
    for _ in 0..n {
        let mut next = vec![0u128; c.object_count()];
        for f in 0..c.morphism_count() {
            if normalized && c.is_identity(f) {
                continue;
            }
            next[c.tgt(f)] = next[c.tgt(f)].saturating_add(ending[c.src(f)]);
        }
        ending = next;
        out.push(weigh(&ending));
    }
    out
}

/// The Bousfield-Kan complex of `x` in degrees `0..=n`. Faces `d_i` with
/// `i < n` keep the coefficient; the last face applies `X` of the last arrow.
pub fn bk_complex(x: &AbPresheaf, n: usize, normalized: bool) -> BkComplex {
    let base = x.base().clone();
    let chains: Vec<Vec<Chain>> = (0..=n).map(|k| enumerate_chains(&base, k, normalized)).collect();
    let offsets: Vec<Vec<usize>> = chains.iter().map(|chs| chain_offsets(&base, x, chs)).collect();
    let diffs = (1..=n)
        .map(|k| {
            let index = ChainIndex::new(&chains[k - 1]);
            let rows = *offsets[k - 1].last().unwrap();
            let columns: Vec<Vec<(usize, BigInt)>> = chains[k]
                .par_iter()
                .flat_map_iter(|phi| {
                    let r = x.rank(phi.last(&base));
                    let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); r];
                    for i in 0..=k {
                        let Some(psi) = index.get(&phi.face(&base, i)) else { continue };
                        let at = offsets[k - 1][psi];
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        if i < k {
                            for (j, col) in cols.iter_mut().enumerate() {
                                col.push((at + j, BigInt::from(sign)));
                            }
                        } else {
                            let m = x.action(phi.arrows[k - 1]);
                            for (j, col) in cols.iter_mut().enumerate() {
                                col.extend(m.column(j).iter().map(|(row, v)| (at + row, v * sign)));
                            }
                        }
                    }
                    cols
                })
                .collect();
            IntMatrix::from_columns(rows, columns)
        })
        .collect();
    let ranks = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let complex = ChainComplex::new(ranks, diffs).expect("Bousfield-Kan differential squares to zero");
    BkComplex { base, coeff: x.clone(), trunc: n, normalized, chains, offsets, complex }
}

/// `H_k(A, X)` for `0 ≤ k < n`.
pub fn presheaf_homology(x: &AbPresheaf, n: usize, normalized: bool) -> Vec<FgAbGroup> {
    bk_complex(x, n, normalized).homology()
}

/// [`presheaf_homology`], refusing inputs whose complex would have more than
/// `budget` generators in some degree.
pub fn presheaf_homology_within(
    x: &AbPresheaf,
    n: usize,
    normalized: bool,
    budget: u128,
) -> Result<Vec<FgAbGroup>, HomError> {
    let counts = bk_generator_counts(x, n, normalized);
    if let Some((degree, &generators)) = counts.iter().enumerate().find(|(_, &g)| g > budget) {
        return Err(HomError::TooLarge { degree, generators, budget });
    }
    Ok(presheaf_homology(x, n, normalized))
}
