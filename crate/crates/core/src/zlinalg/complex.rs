use num_bigint::BigInt;
use rayon::prelude::*;

use super::smith::{invariant_factors, smith_normal_form};
use super::{FgAbGroup, IntMatrix, LinalgError};

/// A chain complex `C_0 ← C_1 ← … ← C_N` of finite-rank free ℤ-modules.
///
/// `diffs[i]` is `d_{i+1} : C_{i+1} → C_i`. Homology is certified only in
/// degrees `0..N`: degree `N` has no stored incoming differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `d_i · d_{i+1} = 0`.
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self, LinalgError> {
        if ranks.len() != diffs.len() + 1 {
            return Err(LinalgError::ShapeMismatch(format!("{} ranks for {} differentials", ranks.len(), diffs.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[i], ranks[i + 1]) {
                return Err(LinalgError::ShapeMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        if let Some(i) = (1..diffs.len()).into_par_iter().find_first(|&i| !diffs[i - 1].mul(&diffs[i]).is_zero()) {
            return Err(LinalgError::NotAComplex { degree: i });
        }
        Ok(ChainComplex { ranks, diffs })
    }

    /// The complex with a single ℤ^rank in degree `degree`, truncated at `trunc`.
    pub fn concentrated(rank: usize, degree: usize, trunc: usize) -> Self {
        let mut ranks = vec![0; trunc + 1];
        if degree <= trunc {
            ranks[degree] = rank;
        }
        let diffs = (1..=trunc).map(|i| IntMatrix::zeros(ranks[i - 1], ranks[i])).collect();
        ChainComplex { ranks, diffs }
    }

    pub fn trunc(&self) -> usize {
        self.diffs.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    /// `d_n : C_n → C_{n−1}` for `1 ≤ n ≤ trunc`.
    pub fn differential(&self, n: usize) -> &IntMatrix {
        &self.diffs[n - 1]
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.diffs
    }

    /// `d_n` with the convention `d_0 = 0 : C_0 → 0` and `d_{N+1}` absent.
    fn incoming(&self, n: usize) -> &IntMatrix {
        &self.diffs[n]
    }

    /// `H_n = ker d_n / im d_{n+1}` for `n < trunc`.
    pub fn homology(&self, n: usize) -> Result<FgAbGroup, LinalgError> {
        if n >= self.trunc() {
            return Err(LinalgError::DegreeOutOfCertifiedRange { degree: n, trunc: self.trunc() });
        }
        let outgoing = if n == 0 { 0 } else { invariant_factors(self.differential(n)).len() };
        let factors = invariant_factors(self.incoming(n));
        Ok(FgAbGroup::from_factors(self.ranks[n] - outgoing, &factors))
    }

    /// Homology in every certified degree `0..trunc`.
    pub fn homology_all(&self) -> Vec<FgAbGroup> {
        let factors: Vec<Vec<BigInt>> = self.diffs.par_iter().map(invariant_factors).collect();
        (0..self.trunc())
            .map(|n| {
                let outgoing = if n == 0 { 0 } else { factors[n - 1].len() };
                FgAbGroup::from_factors(self.ranks[n] - outgoing, &factors[n])
            })
            .collect()
    }

    /// Drops degrees above `trunc`.
    pub fn truncate(&self, trunc: usize) -> ChainComplex {
        let trunc = trunc.min(self.trunc());
        ChainComplex { ranks: self.ranks[..=trunc].to_vec(), diffs: self.diffs[..trunc].to_vec() }
    }

    /// Explicit presentation of `H_n` in adapted bases (dense).
    pub fn homology_presentation(&self, n: usize) -> Result<HomologyPresentation, LinalgError> {
        if n >= self.trunc() {
            return Err(LinalgError::DegreeOutOfCertifiedRange { degree: n, trunc: self.trunc() });
        }
        let size = self.ranks[n];
        let (cycles, coords) = if n == 0 {
            (IntMatrix::identity(size), IntMatrix::identity(size))
        } else {
            let snf = smith_normal_form(self.differential(n));
            let r = snf.rank();
            (snf.v.column_range(r..size), snf.v_inv.row_range(r..size))
        };
        let relations = coords.mul(self.incoming(n));
        Ok(HomologyPresentation { cycles, coords, relations })
    }
}

/// `H_n ≅ ℤ^k / im(relations)`, where `cycles` (n_n × k) is a basis of the
/// cycles and `coords` (k × n_n) reads cycles in that basis.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub cycles: IntMatrix,
    pub coords: IntMatrix,
    pub relations: IntMatrix,
}

impl HomologyPresentation {
    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::cokernel(&self.relations)
    }
}

/// A chain map `f : source → target` between complexes of equal truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    levels: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, levels: Vec<IntMatrix>) -> Result<Self, LinalgError> {
        if source.trunc() != target.trunc() || levels.len() != source.trunc() + 1 {
            return Err(LinalgError::ShapeMismatch(format!(
                "chain map with {} levels between truncations {} and {}",
                levels.len(),
                source.trunc(),
                target.trunc()
            )));
        }
        for (i, f) in levels.iter().enumerate() {
            if f.shape() != (target.rank(i), source.rank(i)) {
                return Err(LinalgError::ShapeMismatch(format!(
                    "f_{i} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.rank(i),
                    source.rank(i)
                )));
            }
        }
        for i in 1..levels.len() {
            let left = levels[i - 1].mul(source.differential(i));
            let right = target.differential(i).mul(&levels[i]);
            if left != right {
                return Err(LinalgError::NotAChainMap { degree: i });
            }
        }
        Ok(ChainMap { source, target, levels })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let levels = c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect();
        ChainMap { source: c.clone(), target: c.clone(), levels }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn level(&self, n: usize) -> &IntMatrix {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[IntMatrix] {
        &self.levels
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> Result<ChainMap, LinalgError> {
        if first.target != self.source {
            return Err(LinalgError::ShapeMismatch("composing chain maps with mismatched ends".into()));
        }
        let levels = self.levels.iter().zip(&first.levels).map(|(g, f)| g.mul(f)).collect();
        Ok(ChainMap { source: first.source.clone(), target: self.target.clone(), levels })
    }

    /// Whether every level is invertible over ℤ (a chain isomorphism).
    pub fn is_isomorphism(&self) -> bool {
        self.levels.iter().all(|f| f.rows() == f.cols() && f.is_unimodular())
    }

    /// Matrix of `H_n(f)` between the adapted presentations of source and target.
    pub fn induced(&self, n: usize) -> Result<InducedMap, LinalgError> {
        let src = self.source.homology_presentation(n)?;
        let tgt = self.target.homology_presentation(n)?;
        let matrix = tgt.coords.mul(&self.levels[n].mul(&src.cycles));
        Ok(InducedMap { source: src, target: tgt, matrix })
    }

    /// For each degree `0..=upto`, whether `H_n(f)` is an isomorphism.
    pub fn is_homology_iso(&self, upto: usize) -> Result<Vec<bool>, LinalgError> {
        if upto >= self.source.trunc() {
            return Err(LinalgError::DegreeOutOfCertifiedRange { degree: upto, trunc: self.source.trunc() });
        }
        (0..=upto).into_par_iter().map(|n| Ok(self.induced(n)?.is_isomorphism())).collect()
    }
}

/// An induced map on homology, `coker(source.relations) → coker(target.relations)`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomologyPresentation,
    pub target: HomologyPresentation,
    pub matrix: IntMatrix,
}

impl InducedMap {
    /// Surjective iff `[matrix | target.relations]` generates the whole lattice.
    pub fn is_surjective(&self) -> bool {
        FgAbGroup::cokernel(&self.matrix.hstack(&self.target.relations)).is_trivial()
    }

    /// Finitely generated abelian groups are Hopfian, so a surjection between
    /// isomorphic ones is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source.group() == self.target.group() && self.is_surjective()
    }
}
