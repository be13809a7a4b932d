use std::sync::Arc;

use num_bigint::BigInt;

use super::{PresheafError, PresheafViolation, SetPresheaf};
use crate::fincat::{FinCat, FinFunctor};
use crate::zlinalg::{FgAbGroup, IntMatrix};

/// A presheaf `X : A^op → Ab` with values `ℤ^{r_a}`. The action of
/// `f : a → a'` is an `r_a × r_{a'}` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbPresheaf {
    base: Arc<FinCat>,
    ranks: Vec<usize>,
    actions: Vec<IntMatrix>,
}

impl AbPresheaf {
    pub fn new(base: Arc<FinCat>, ranks: Vec<usize>, actions: Vec<IntMatrix>) -> Result<Self, PresheafError> {
        let x = Self::unchecked(base, ranks, actions)?;
        match x.validate().into_iter().next() {
            None => Ok(x),
            Some(v) => Err(PresheafError::Invalid(v)),
        }
    }

    /// Checks shapes only.
    pub fn unchecked(base: Arc<FinCat>, ranks: Vec<usize>, actions: Vec<IntMatrix>) -> Result<Self, PresheafError> {
        if ranks.len() != base.object_count() || actions.len() != base.morphism_count() {
            return Err(PresheafError::Shape("one rank per object and one matrix per morphism expected".into()));
        }
        for (f, m) in actions.iter().enumerate() {
            if m.shape() != (ranks[base.src(f)], ranks[base.tgt(f)]) {
                return Err(PresheafError::Shape(format!(
                    "action of `{}` is {}x{}, expected {}x{}",
                    base.morphism(f).name,
                    m.rows(),
                    m.cols(),
                    ranks[base.src(f)],
                    ranks[base.tgt(f)]
                )));
            }
        }
        Ok(AbPresheaf { base, ranks, actions })
    }

    pub fn validate(&self) -> Vec<PresheafViolation> {
        let c = &self.base;
        let mut out = Vec::new();
        for a in 0..c.object_count() {
            if !self.actions[c.identity(a)].is_identity() {
                out.push(PresheafViolation::Identity { object: a });
            }
        }
        for f in 0..c.morphism_count() {
            for &g in c.out_of(c.tgt(f)) {
                if self.actions[c.compose(g, f)] != self.actions[f].mul(&self.actions[g]) {
                    out.push(PresheafViolation::Composition { g, f });
                }
            }
        }
        out
    }

    pub fn zero(base: Arc<FinCat>) -> Self {
        let ranks = vec![0; base.object_count()];
        let actions = vec![IntMatrix::zeros(0, 0); base.morphism_count()];
        AbPresheaf { base, ranks, actions }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, a: usize) -> usize {
        self.ranks[a]
    }

    pub fn action(&self, f: usize) -> &IntMatrix {
        &self.actions[f]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.actions
    }

    pub fn direct_sum(&self, other: &AbPresheaf) -> Result<Self, PresheafError> {
        if self.base != other.base {
            return Err(PresheafError::BaseMismatch);
        }
        let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(l, r)| IntMatrix::block_diag(&[l.clone(), r.clone()]))
            .collect();
        Ok(AbPresheaf { base: self.base.clone(), ranks, actions })
    }

    /// Replaces the basis at each object: `p[a]` is invertible and
    /// `X'(f) = p_a · X(f) · p_{a'}^{-1}`.
    pub fn conjugate(&self, p: &[IntMatrix], p_inv: &[IntMatrix]) -> Result<Self, PresheafError> {
        let c = &self.base;
        let actions =
            (0..c.morphism_count()).map(|f| p[c.src(f)].mul(&self.actions[f]).mul(&p_inv[c.tgt(f)])).collect();
        AbPresheaf::new(c.clone(), self.ranks.clone(), actions)
    }
}

/// `ℤ^(X)`: the basis of `ℤ^(Xa)` is `X(a)` in stored order.
pub fn whitehead(x: &SetPresheaf) -> AbPresheaf {
    let c = x.base();
    let ranks: Vec<usize> = (0..c.object_count()).map(|a| x.size(a)).collect();
    let actions = (0..c.morphism_count())
        .map(|f| {
            let triplets = x.action(f).iter().enumerate().map(|(s2, &s)| (s, s2, 1i64));
            IntMatrix::from_triplets(ranks[c.src(f)], ranks[c.tgt(f)], triplets)
        })
        .collect();
    AbPresheaf { base: c.clone(), ranks, actions }
}

/// The constant presheaf `ℤ_A`.
pub fn constant_z(a: Arc<FinCat>) -> AbPresheaf {
    let ranks = vec![1; a.object_count()];
    let actions = vec![IntMatrix::identity(1); a.morphism_count()];
    AbPresheaf { base: a, ranks, actions }
}

/// `(u*)^ab Y = Y ∘ u^op`.
pub fn restrict_ab(u: &FinFunctor, y: &AbPresheaf) -> Result<AbPresheaf, PresheafError> {
    if u.cod() != y.base() {
        return Err(PresheafError::BaseMismatch);
    }
    let ranks = (0..u.dom().object_count()).map(|a| y.rank(u.obj(a))).collect();
    let actions = (0..u.dom().morphism_count()).map(|f| y.action(u.mor(f)).clone()).collect();
    Ok(AbPresheaf { base: u.dom().clone(), ranks, actions })
}

/// Offsets of the blocks `ℤ^{r_a}` inside `⊕_a ℤ^{r_a}`.
pub(crate) fn offsets(ranks: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(ranks.len() + 1);
    let mut total = 0;
    for &r in ranks {
        out.push(total);
        total += r;
    }
    out.push(total);
    out
}

/// The relation matrix whose cokernel is `colim X`: one block column per
/// non-identity `f : a → a'`, with `X(f)` in the rows of `a` and `−1` in
/// the rows of `a'`.
pub fn colim_presentation(x: &AbPresheaf) -> IntMatrix {
    let c = x.base();
    let off = offsets(x.ranks());
    let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
    for f in 0..c.morphism_count() {
        if c.is_identity(f) {
            continue;
        }
        let (a, a2) = (c.src(f), c.tgt(f));
        let m = x.action(f);
        for j in 0..x.rank(a2) {
            let mut col: Vec<(usize, BigInt)> = m.column(j).iter().map(|(r, v)| (off[a] + r, v.clone())).collect();
            col.push((off[a2] + j, BigInt::from(-1)));
            columns.push(col);
        }
    }
    IntMatrix::from_columns(off[c.object_count()], columns)
}

pub fn colim_ab(x: &AbPresheaf) -> FgAbGroup {
    FgAbGroup::cokernel(&colim_presentation(x))
}

/// A natural transformation between abelian presheaves on the same base;
/// `components[a] : ℤ^{r_a} → ℤ^{r'_a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbPresheafMap {
    source: AbPresheaf,
    target: AbPresheaf,
    components: Vec<IntMatrix>,
}

impl AbPresheafMap {
    /// Checks shapes only; see [`validate_map`].
    pub fn new(source: AbPresheaf, target: AbPresheaf, components: Vec<IntMatrix>) -> Result<Self, PresheafError> {
        if source.base() != target.base() {
            return Err(PresheafError::BaseMismatch);
        }
        if components.len() != source.base().object_count() {
            return Err(PresheafError::Shape("one component per object expected".into()));
        }
        for (a, m) in components.iter().enumerate() {
            if m.shape() != (target.rank(a), source.rank(a)) {
                return Err(PresheafError::Shape(format!(
                    "component at `{}` has the wrong shape",
                    source.base().object_name(a)
                )));
            }
        }
        Ok(AbPresheafMap { source, target, components })
    }

    pub fn identity(x: &AbPresheaf) -> Self {
        let components = x.ranks().iter().map(|&r| IntMatrix::identity(r)).collect();
        AbPresheafMap { source: x.clone(), target: x.clone(), components }
    }

    pub fn zero(source: &AbPresheaf, target: &AbPresheaf) -> Result<Self, PresheafError> {
        let components =
            (0..source.base().object_count()).map(|a| IntMatrix::zeros(target.rank(a), source.rank(a))).collect();
        Self::new(source.clone(), target.clone(), components)
    }

    pub fn source(&self) -> &AbPresheaf {
        &self.source
    }

    pub fn target(&self) -> &AbPresheaf {
        &self.target
    }

    pub fn component(&self, a: usize) -> &IntMatrix {
        &self.components[a]
    }

    pub fn components(&self) -> &[IntMatrix] {
        &self.components
    }

    /// `(u*)φ`, the map restricted along `u`.
    pub fn restrict(&self, u: &FinFunctor) -> Result<AbPresheafMap, PresheafError> {
        let source = restrict_ab(u, &self.source)?;
        let target = restrict_ab(u, &self.target)?;
        let components = (0..u.dom().object_count()).map(|a| self.components[u.obj(a)].clone()).collect();
        Ok(AbPresheafMap { source, target, components })
    }
}

/// Every morphism whose naturality square `φ_a X(f) = Y(f) φ_{a'}` fails.
pub fn validate_map(phi: &AbPresheafMap) -> Vec<PresheafViolation> {
    let c = phi.source.base();
    (0..c.morphism_count())
        .filter(|&f| {
            let (a, a2) = (c.src(f), c.tgt(f));
            phi.components[a].mul(phi.source.action(f)) != phi.target.action(f).mul(&phi.components[a2])
        })
        .map(|f| PresheafViolation::Naturality { f })
        .collect()
}
