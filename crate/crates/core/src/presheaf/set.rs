use std::sync::Arc;

use super::{PresheafError, PresheafViolation};
use crate::fincat::{FinCat, FinFunctor};

/// A presheaf of finite sets `X : A^op → Set`.
///
/// Elements of `X(a)` are numbered `0..size(a)`; `action(f)[s']` is
/// `X(f)(s')` for `f : a → a'` and `s' ∈ X(a')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPresheaf {
    base: Arc<FinCat>,
    labels: Vec<Vec<String>>,
    actions: Vec<Vec<usize>>,
}

impl SetPresheaf {
    pub fn new(base: Arc<FinCat>, labels: Vec<Vec<String>>, actions: Vec<Vec<usize>>) -> Result<Self, PresheafError> {
        let x = Self::unchecked(base, labels, actions)?;
        match x.validate().into_iter().next() {
            None => Ok(x),
            Some(v) => Err(PresheafError::Invalid(v)),
        }
    }

    /// Checks sizes only.
    pub fn unchecked(
        base: Arc<FinCat>,
        labels: Vec<Vec<String>>,
        actions: Vec<Vec<usize>>,
    ) -> Result<Self, PresheafError> {
        if labels.len() != base.object_count() || actions.len() != base.morphism_count() {
            return Err(PresheafError::Shape("one value per object and one action per morphism expected".into()));
        }
        for (f, act) in actions.iter().enumerate() {
            let (a, a2) = (base.src(f), base.tgt(f));
            if act.len() != labels[a2].len() || act.iter().any(|&s| s >= labels[a].len()) {
                return Err(PresheafError::Shape(format!(
                    "action of `{}` is not a map X({}) → X({})",
                    base.morphism(f).name,
                    base.object_name(a2),
                    base.object_name(a)
                )));
            }
        }
        Ok(SetPresheaf { base, labels, actions })
    }

    pub fn validate(&self) -> Vec<PresheafViolation> {
        let c = &self.base;
        let mut out = Vec::new();
        for a in 0..c.object_count() {
            let id = &self.actions[c.identity(a)];
            if id.iter().enumerate().any(|(s, &t)| s != t) {
                out.push(PresheafViolation::Identity { object: a });
            }
        }
        for f in 0..c.morphism_count() {
            for &g in c.out_of(c.tgt(f)) {
                let gf = &self.actions[c.compose(g, f)];
                let (xf, xg) = (&self.actions[f], &self.actions[g]);
                if gf.iter().enumerate().any(|(s, &t)| xf[xg[s]] != t) {
                    out.push(PresheafViolation::Composition { g, f });
                }
            }
        }
        out
    }

    /// `Hom_A(−, b)`, elements labelled by morphism names in index order.
    pub fn representable(base: Arc<FinCat>, b: usize) -> Self {
        let c = &base;
        let homs: Vec<&[usize]> = (0..c.object_count()).map(|a| c.hom(a, b)).collect();
        let labels = homs.iter().map(|h| h.iter().map(|&f| c.morphism(f).name.clone()).collect()).collect();
        let actions = (0..c.morphism_count())
            .map(|f| {
                let (a, a2) = (c.src(f), c.tgt(f));
                homs[a2]
                    .iter()
                    .map(|&h| homs[a].binary_search(&c.compose(h, f)).expect("hom lists are sorted"))
                    .collect()
            })
            .collect();
        SetPresheaf { base, labels, actions }
    }

    pub fn terminal(base: Arc<FinCat>) -> Self {
        let labels = vec![vec!["*".to_string()]; base.object_count()];
        let actions = vec![vec![0]; base.morphism_count()];
        SetPresheaf { base, labels, actions }
    }

    pub fn empty(base: Arc<FinCat>) -> Self {
        let labels = vec![Vec::new(); base.object_count()];
        let actions = vec![Vec::new(); base.morphism_count()];
        SetPresheaf { base, labels, actions }
    }

    /// Disjoint union; labels of the second summand are primed.
    pub fn coproduct(&self, other: &SetPresheaf) -> Result<Self, PresheafError> {
        if self.base != other.base {
            return Err(PresheafError::BaseMismatch);
        }
        let labels = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(l, r)| l.iter().cloned().chain(r.iter().map(|s| format!("{s}'"))).collect())
            .collect();
        let actions = (0..self.base.morphism_count())
            .map(|f| {
                let shift = self.size(self.base.src(f));
                self.actions[f].iter().copied().chain(other.actions[f].iter().map(|&s| s + shift)).collect()
            })
            .collect();
        Ok(SetPresheaf { base: self.base.clone(), labels, actions })
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn size(&self, a: usize) -> usize {
        self.labels[a].len()
    }

    pub fn label(&self, a: usize, s: usize) -> &str {
        &self.labels[a][s]
    }

    pub fn labels(&self, a: usize) -> &[String] {
        &self.labels[a]
    }

    /// `X(f)(s)` for `s ∈ X(tgt f)`.
    pub fn act(&self, f: usize, s: usize) -> usize {
        self.actions[f][s]
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.actions[f]
    }

    pub fn total_size(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }
}

/// `u* Y = Y ∘ u^op`.
pub fn restrict_set(u: &FinFunctor, y: &SetPresheaf) -> Result<SetPresheaf, PresheafError> {
    if u.cod() != y.base() {
        return Err(PresheafError::BaseMismatch);
    }
    let labels = (0..u.dom().object_count()).map(|a| y.labels(u.obj(a)).to_vec()).collect();
    let actions = (0..u.dom().morphism_count()).map(|f| y.action(u.mor(f)).to_vec()).collect();
    Ok(SetPresheaf { base: u.dom().clone(), labels, actions })
}
