//! Monotone maps `[n] → [m]` and truncations `Δ_{≤k}` of the simplex category.

use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCat, Morphism};

/// A weakly monotone map `[src] → [tgt]` stored as its value sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    pub src: usize,
    pub tgt: usize,
    pub values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(tgt: usize, values: Vec<usize>) -> Self {
        assert!(!values.is_empty());
        assert!(values.windows(2).all(|w| w[0] <= w[1]) && values.iter().all(|&v| v <= tgt));
        MonotoneMap { src: values.len() - 1, tgt, values }
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { src: n, tgt: n, values: (0..=n).collect() }
    }

    /// δ_i : [n−1] → [n], the injection skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        MonotoneMap { src: n - 1, tgt: n, values: (0..n).map(|k| if k < i { k } else { k + 1 }).collect() }
    }

    /// σ_j : [n+1] → [n], the surjection hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        assert!(j <= n);
        MonotoneMap { src: n + 1, tgt: n, values: (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonotoneMap) -> MonotoneMap {
        assert_eq!(first.tgt, self.src);
        MonotoneMap { src: first.src, tgt: self.tgt, values: first.values.iter().map(|&v| self.values[v]).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.tgt
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.is_injective()
    }

    /// Epi-mono factorization `self = mono ∘ epi`.
    pub fn factor(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let p = image.len() - 1;
        let epi_values = self.values.iter().map(|v| image.binary_search(v).unwrap()).collect();
        (
            MonotoneMap { src: self.src, tgt: p, values: epi_values },
            MonotoneMap { src: p, tgt: self.tgt, values: image },
        )
    }

    /// All monotone maps `[n] → [m]` in lexicographic order of value sequences.
    pub fn all(n: usize, m: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut values = vec![0; n + 1];
        fn rec(pos: usize, lo: usize, m: usize, values: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if pos == values.len() {
                out.push(MonotoneMap { src: values.len() - 1, tgt: m, values: values.clone() });
                return;
            }
            for v in lo..=m {
                values[pos] = v;
                rec(pos + 1, v, m, values, out);
            }
        }
        rec(0, 0, m, &mut values, &mut out);
        out
    }

    /// All surjections `[n] ↠ [k]`, lexicographic.
    pub fn surjections(n: usize, k: usize) -> Vec<MonotoneMap> {
        Self::all(n, k).into_iter().filter(|m| m.is_surjective()).collect()
    }

    pub fn name(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        format!("D{}D{}_{}", self.src, self.tgt, vals.join("."))
    }
}

/// `Δ_{≤k}` together with the value sequence behind every morphism index.
#[derive(Clone, Debug)]
pub struct DeltaTrunc {
    cat: Arc<FinCat>,
    maps: Vec<MonotoneMap>,
    index: HashMap<MonotoneMap, usize>,
}

impl DeltaTrunc {
    pub fn new(k: usize) -> Self {
        let mut maps = Vec::new();
        for i in 0..=k {
            for j in 0..=k {
                maps.extend(MonotoneMap::all(i, j));
            }
        }
        let index: HashMap<MonotoneMap, usize> = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let objects = (0..=k).map(|i| format!("D{i}")).collect();
        let morphisms = maps.iter().map(|m| Morphism { name: m.name(), src: m.src, tgt: m.tgt }).collect();
        let identities = (0..=k).map(|i| index[&MonotoneMap::identity(i)]).collect();
        let cat = FinCat::from_fn(objects, morphisms, identities, |g, f| index.get(&maps[g].after(&maps[f])).copied())
            .expect("monotone maps are closed under composition");
        DeltaTrunc { cat: Arc::new(cat), maps, index }
    }

    pub fn bound(&self) -> usize {
        self.cat.object_count() - 1
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn map(&self, f: usize) -> &MonotoneMap {
        &self.maps[f]
    }

    pub fn index_of(&self, m: &MonotoneMap) -> usize {
        self.index[m]
    }

    pub fn try_index_of(&self, m: &MonotoneMap) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn hom_counts_are_binomial() {
        let d = DeltaTrunc::new(3);
        for i in 0..=3 {
            for j in 0..=3 {
                assert_eq!(d.cat().hom(i, j).len(), binomial(i + j + 1, i + 1));
            }
        }
        // [1] → [1]: (0,0), (0,1), (1,1)
        assert_eq!(d.cat().hom(1, 1).len(), 3);
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..=4 {
            for j in 0..=n {
                for i in 0..j {
                    // δ_j δ_i = δ_i δ_{j−1}, i < j
                    let left = MonotoneMap::coface(n, j).after(&MonotoneMap::coface(n - 1, i));
                    let right = MonotoneMap::coface(n, i).after(&MonotoneMap::coface(n - 1, j - 1));
                    assert_eq!(left, right);
                }
            }
        }
        let d = DeltaTrunc::new(2);
        let cofaces: Vec<usize> = (0..=2).map(|i| d.index_of(&MonotoneMap::coface(2, i))).collect();
        assert_eq!(cofaces.len(), 3);
        assert!(cofaces.iter().all(|&f| d.cat().src(f) == 1 && d.cat().tgt(f) == 2));
    }

    #[test]
    fn factorization() {
        let m = MonotoneMap::new(3, vec![0, 0, 2, 2]);
        let (e, i) = m.factor();
        assert!(e.is_surjective() && i.is_injective());
        assert_eq!(i.after(&e), m);
    }
}
