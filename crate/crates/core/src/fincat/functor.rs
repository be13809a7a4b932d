use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::{CatError, FinCat};

/// A functor between finite categories, given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorViolation {
    /// `F(src f) ≠ src F(f)` or `F(tgt f) ≠ tgt F(f)`.
    Endpoints { f: usize },
    /// `F(id_a) ≠ id_{F a}`.
    Identity { object: usize },
    /// `F(g ∘ f) ≠ F(g) ∘ F(f)`.
    Composition { g: usize, f: usize },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Endpoints { f } => write!(out, "morphism #{f} is sent to an arrow with the wrong ends"),
            FunctorViolation::Identity { object } => write!(out, "identity of object #{object} is not preserved"),
            FunctorViolation::Composition { g, f } => write!(out, "composite of #{g} after #{f} is not preserved"),
        }
    }
}

impl FinFunctor {
    /// Checks only that the maps have the right sizes and ranges.
    pub fn new(dom: Arc<FinCat>, cod: Arc<FinCat>, obj_map: Vec<usize>, mor_map: Vec<usize>) -> Result<Self, CatError> {
        if obj_map.len() != dom.object_count() || mor_map.len() != dom.morphism_count() {
            return Err(CatError::FunctorShape(format!(
                "{} object images for {} objects, {} morphism images for {} morphisms",
                obj_map.len(),
                dom.object_count(),
                mor_map.len(),
                dom.morphism_count()
            )));
        }
        if obj_map.iter().any(|&o| o >= cod.object_count()) || mor_map.iter().any(|&m| m >= cod.morphism_count()) {
            return Err(CatError::FunctorShape("image index out of range".into()));
        }
        Ok(FinFunctor { dom, cod, obj_map, mor_map })
    }

    /// `new` followed by exhaustive validation.
    pub fn checked(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self, CatError> {
        let f = Self::new(dom, cod, obj_map, mor_map)?;
        match f.validate().into_iter().next() {
            None => Ok(f),
            Some(v) => Err(CatError::InvalidFunctor(v)),
        }
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let obj_map = (0..c.object_count()).collect();
        let mor_map = (0..c.morphism_count()).collect();
        FinFunctor { dom: c.clone(), cod: c, obj_map, mor_map }
    }

    /// The functor `e → c` picking `object`.
    pub fn point(e: Arc<FinCat>, c: Arc<FinCat>, object: usize) -> Result<Self, CatError> {
        Self::checked(e, c.clone(), vec![object], vec![c.identity(object)])
    }

    /// The unique functor `c → e`.
    pub fn to_terminal(c: Arc<FinCat>, e: Arc<FinCat>) -> Result<Self, CatError> {
        if e.morphism_count() != 1 {
            return Err(CatError::FunctorShape("target is not terminal".into()));
        }
        Self::checked(c.clone(), e, vec![0; c.object_count()], vec![0; c.morphism_count()])
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn obj(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    /// Exhaustive check over all morphisms and all composable pairs.
    pub fn validate(&self) -> Vec<FunctorViolation> {
        let (d, c) = (&self.dom, &self.cod);
        let mut violations = Vec::new();
        for f in 0..d.morphism_count() {
            let m = self.mor_map[f];
            if c.src(m) != self.obj_map[d.src(f)] || c.tgt(m) != self.obj_map[d.tgt(f)] {
                violations.push(FunctorViolation::Endpoints { f });
            }
        }
        if !violations.is_empty() {
            return violations;
        }
        for a in 0..d.object_count() {
            if self.mor_map[d.identity(a)] != c.identity(self.obj_map[a]) {
                violations.push(FunctorViolation::Identity { object: a });
            }
        }
        let comp: Vec<FunctorViolation> = (0..d.morphism_count())
            .into_par_iter()
            .flat_map_iter(|f| {
                d.out_of(d.tgt(f))
                    .iter()
                    .filter(move |&&g| self.mor_map[d.compose(g, f)] != c.compose(self.mor_map[g], self.mor_map[f]))
                    .map(move |&g| FunctorViolation::Composition { g, f })
                    .collect::<Vec<_>>()
            })
            .collect();
        violations.extend(comp);
        violations
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor, CatError> {
        if self.cod != other.dom {
            return Err(CatError::FunctorShape("composing functors with mismatched ends".into()));
        }
        Ok(FinFunctor {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            obj_map: self.obj_map.iter().map(|&o| other.obj_map[o]).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor_map[m]).collect(),
        })
    }

    /// Injective on every Hom-set.
    pub fn is_faithful(&self) -> bool {
        let d = &self.dom;
        (0..d.object_count()).all(|a| {
            (0..d.object_count()).all(|b| {
                let mut images: Vec<usize> = d.hom(a, b).iter().map(|&f| self.mor_map[f]).collect();
                images.sort_unstable();
                images.windows(2).all(|w| w[0] != w[1])
            })
        })
    }

    /// Bijective on every Hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let (d, c) = (&self.dom, &self.cod);
        self.is_faithful()
            && (0..d.object_count()).all(|a| {
                (0..d.object_count()).all(|b| d.hom(a, b).len() == c.hom(self.obj_map[a], self.obj_map[b]).len())
            })
    }

    /// A valid functor that is bijective on objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let bijective = |map: &[usize], n: usize| {
            let mut seen = vec![false; n];
            map.len() == n && map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        bijective(&self.obj_map, self.cod.object_count())
            && bijective(&self.mor_map, self.cod.morphism_count())
            && self.validate().is_empty()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut obj_map = vec![0; self.obj_map.len()];
        for (a, &b) in self.obj_map.iter().enumerate() {
            obj_map[b] = a;
        }
        let mut mor_map = vec![0; self.mor_map.len()];
        for (f, &g) in self.mor_map.iter().enumerate() {
            mor_map[g] = f;
        }
        Some(FinFunctor { dom: self.cod.clone(), cod: self.dom.clone(), obj_map, mor_map })
    }
}
