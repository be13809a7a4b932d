use std::collections::HashMap;

use num_bigint::BigInt;

use super::{moore_normalized, MooreComplex, TruncSimpAb};
use crate::fincat::MonotoneMap;
use crate::zlinalg::{left_inverse, ChainComplex, ChainMap, IntMatrix};

/// Summands of `Γ(C)_n`, one per surjection `[n] ↠ [k]`, with offsets.
struct Summands {
    maps: Vec<MonotoneMap>,
    offsets: Vec<usize>,
    position: HashMap<MonotoneMap, usize>,
    total: usize,
}

impl Summands {
    fn new(c: &ChainComplex, n: usize) -> Self {
        let maps: Vec<MonotoneMap> = (0..=n).rev().flat_map(|k| MonotoneMap::surjections(n, k)).collect();
        let mut offsets = Vec::with_capacity(maps.len());
        let mut total = 0;
        for m in &maps {
            offsets.push(total);
            total += c.rank(m.tgt);
        }
        let position = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Summands { maps, offsets, position, total }
    }
}

/// `Γ(θ) : Γ(C)_n → Γ(C)_m` for `θ : [m] → [n]`. On the summand of
/// `σ : [n] ↠ [k]`, factor `σθ = ηε`; the block is the identity into the
/// summand of `ε` if `η = id`, the differential if `η = δ_0`, and zero
/// otherwise.
fn structure_map(c: &ChainComplex, src: &Summands, tgt: &Summands, theta: &MonotoneMap) -> IntMatrix {
    let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
    for (s, sigma) in src.maps.iter().enumerate() {
        let k = sigma.tgt;
        let (eps, eta) = sigma.after(theta).factor();
        let into = tgt.offsets[tgt.position[&eps]];
        let from = src.offsets[s];
        if eta.is_identity() {
            for r in 0..c.rank(k) {
                triplets.push((into + r, from + r, BigInt::from(1)));
            }
        } else if eta.src + 1 == k && eta.values[0] == 1 {
            for (row, col, v) in c.differential(k).entries() {
                triplets.push((into + row, from + col, v.clone()));
            }
        }
    }
    IntMatrix::from_triplets(tgt.total, src.total, triplets)
}

/// The Dold-Kan inverse `Γ(C)_n = ⊕_{[n] ↠ [k]} C_k`, truncated with `C`.
pub fn gamma(c: &ChainComplex) -> TruncSimpAb {
    let t = c.trunc();
    let summands: Vec<Summands> = (0..=t).map(|n| Summands::new(c, n)).collect();
    let faces = (0..=t)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n).map(|i| structure_map(c, &summands[n], &summands[n - 1], &MonotoneMap::coface(n, i))).collect()
        })
        .collect();
    let degens = (0..=t)
        .map(|n| {
            if n == t {
                return Vec::new();
            }
            (0..=n)
                .map(|j| structure_map(c, &summands[n], &summands[n + 1], &MonotoneMap::codegeneracy(n, j)))
                .collect()
        })
        .collect();
    TruncSimpAb::new(summands.iter().map(|s| s.total).collect(), faces, degens)
        .expect("Γ satisfies the simplicial identities")
}

/// `N Γ(C)` with the explicit chain isomorphisms to and from `C`.
#[derive(Clone, Debug)]
pub struct DoldKanRoundtrip {
    pub simplicial: TruncSimpAb,
    pub moore: MooreComplex,
    /// `C → N Γ(C)`.
    pub forward: ChainMap,
    /// `N Γ(C) → C`.
    pub backward: ChainMap,
}

impl DoldKanRoundtrip {
    /// Both composites are identities and every level is invertible.
    pub fn is_verified(&self) -> bool {
        let there = self.backward.after(&self.forward).map(|m| m.levels().iter().all(IntMatrix::is_identity));
        let back = self.forward.after(&self.backward).map(|m| m.levels().iter().all(IntMatrix::is_identity));
        there == Ok(true) && back == Ok(true) && self.forward.is_isomorphism()
    }
}

/// `C` sits in `Γ(C)_n` as the summand of `id_{[n]}`, which is the first one.
pub fn gamma_roundtrip(c: &ChainComplex) -> DoldKanRoundtrip {
    let simplicial = gamma(c);
    let moore = moore_normalized(&simplicial);
    let t = c.trunc();
    let mut fwd = Vec::with_capacity(t + 1);
    let mut bwd = Vec::with_capacity(t + 1);
    for n in 0..=t {
        let total = simplicial.ranks()[n];
        let r = c.rank(n);
        let include = IntMatrix::from_triplets(total, r, (0..r).map(|i| (i, i, 1i64)));
        let project = IntMatrix::from_triplets(r, total, (0..r).map(|i| (i, i, 1i64)));
        let basis = &moore.bases[n];
        let coords = left_inverse(basis).expect("Moore bases are saturated");
        fwd.push(coords.mul(&include));
        bwd.push(project.mul(basis));
    }
    let forward = ChainMap::new(c.clone(), moore.complex.clone(), fwd).expect("top summand inclusion is a chain map");
    let backward = ChainMap::new(moore.complex.clone(), c.clone(), bwd).expect("top summand projection is a chain map");
    DoldKanRoundtrip { simplicial, moore, forward, backward }
}
