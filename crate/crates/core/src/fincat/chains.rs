use std::collections::HashMap;

use super::FinCat;

/// A composable chain `x_0 → x_1 → … → x_n` of morphisms, i.e. an
/// `n`-simplex of the nerve. A chain of length 0 is a bare object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn object(a: usize) -> Self {
        Chain { start: a, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn last(&self, c: &FinCat) -> usize {
        self.arrows.last().map_or(self.start, |&f| c.tgt(f))
    }

    /// The object `x_i`.
    pub fn vertex(&self, c: &FinCat, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            c.tgt(self.arrows[i - 1])
        }
    }

    pub fn has_identity(&self, c: &FinCat) -> bool {
        self.arrows.iter().any(|&f| c.is_identity(f))
    }

    /// The face `d_i`: drop the first arrow, compose `f_{i+1} ∘ f_i`, or drop
    /// the last arrow.
    pub fn face(&self, c: &FinCat, i: usize) -> Chain {
        let n = self.len();
        assert!(n >= 1 && i <= n);
        if i == 0 {
            Chain { start: c.tgt(self.arrows[0]), arrows: self.arrows[1..].to_vec() }
        } else if i == n {
            Chain { start: self.start, arrows: self.arrows[..n - 1].to_vec() }
        } else {
            let mut arrows = Vec::with_capacity(n - 1);
            arrows.extend_from_slice(&self.arrows[..i - 1]);
            arrows.push(c.compose(self.arrows[i], self.arrows[i - 1]));
            arrows.extend_from_slice(&self.arrows[i + 1..]);
            Chain { start: self.start, arrows }
        }
    }

    /// The degeneracy `s_j`: insert the identity of `x_j`.
    pub fn degeneracy(&self, c: &FinCat, j: usize) -> Chain {
        assert!(j <= self.len());
        let mut arrows = self.arrows.clone();
        arrows.insert(j, c.identity(self.vertex(c, j)));
        Chain { start: self.start, arrows }
    }

    /// Image under a functor given by its object and morphism maps.
    pub fn map(&self, obj: &[usize], mor: &[usize]) -> Chain {
        Chain { start: obj[self.start], arrows: self.arrows.iter().map(|&f| mor[f]).collect() }
    }
}

/// All chains of length `n`, ordered by start object and then arrow indices.
pub fn enumerate_chains(c: &FinCat, n: usize, identity_free: bool) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut arrows = Vec::with_capacity(n);
    fn rec(c: &FinCat, at: usize, start: usize, n: usize, idf: bool, arrows: &mut Vec<usize>, out: &mut Vec<Chain>) {
        if arrows.len() == n {
            out.push(Chain { start, arrows: arrows.clone() });
            return;
        }
        for &f in c.out_of(at) {
            if idf && c.is_identity(f) {
                continue;
            }
            arrows.push(f);
            rec(c, c.tgt(f), start, n, idf, arrows, out);
            arrows.pop();
        }
    }
    for a in 0..c.object_count() {
        rec(c, a, a, n, identity_free, &mut arrows, &mut out);
    }
    out
}

/// Number of chains of each length `0..=n`, without building them.
pub fn count_chains(c: &FinCat, n: usize, identity_free: bool) -> Vec<u128> {
    // ending[b] = number of chains of the current length ending at b
    let mut ending = vec![1u128; c.object_count()];
    let mut counts = vec![ending.iter().sum()];
    for _ in 0..n {
        let mut next = vec![0u128; c.object_count()];
        for f in 0..c.morphism_count() {
            if identity_free && c.is_identity(f) {
                continue;
            }
            next[c.tgt(f)] = next[c.tgt(f)].saturating_add(ending[c.src(f)]);
        }
        ending = next;
        counts.push(ending.iter().fold(0u128, |a, &b| a.saturating_add(b)));
    }
    counts
}

/// Position lookup for a list of chains.
#[derive(Clone, Debug, Default)]
pub struct ChainIndex {
    index: HashMap<Chain, usize>,
}

impl ChainIndex {
    pub fn new(chains: &[Chain]) -> Self {
        ChainIndex { index: chains.iter().cloned().enumerate().map(|(i, ch)| (ch, i)).collect() }
    }

    pub fn get(&self, chain: &Chain) -> Option<usize> {
        self.index.get(chain).copied()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}
