//! Finite categories given by total composition tables, functors between
//! them, and the usual constructions: opposites, products, slices, and
//! categories of elements.

mod builders;
mod chains;
mod constructions;
pub mod delta;
mod functor;
mod iso;

pub use builders::{build_delta_trunc, build_group_cat, build_poset, cyclic_group_cat, discrete, terminal};
pub use chains::{count_chains, enumerate_chains, Chain, ChainIndex};
pub use constructions::{
    category_of_elements, connected_components, opposite, product, product_functor, slice_over, terminal_objects, Slice,
};
pub use delta::{DeltaTrunc, MonotoneMap};
pub use functor::{FinFunctor, FunctorViolation};
pub use iso::find_isomorphism;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("morphism `{0}` refers to an unknown object")]
    UnknownObject(String),
    #[error("object {object} has no identity, or its identity is not an endomorphism")]
    BadIdentity { object: String },
    #[error("composite {g} ∘ {f} is not defined in the table")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} ∘ {f} listed but {f} and {g} are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite {g} ∘ {f} listed twice")]
    DuplicateComposite { g: String, f: String },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("relation is not antisymmetric: {a} and {b} are distinct but comparable both ways")]
    NotAntisymmetric { a: String, b: String },
    #[error("category fails validation: {0}")]
    Invalid(Violation),
    #[error("functor fails validation: {0}")]
    InvalidFunctor(FunctorViolation),
    #[error("functor data has the wrong size: {0}")]
    FunctorShape(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A law violated by a composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The composite `g ∘ f = h` does not go from `src f` to `tgt g`.
    CompositeTyping { g: usize, f: usize, h: usize },
    /// `f ∘ id ≠ f` or `id ∘ f ≠ f`.
    IdentityLaw { f: usize },
    /// `h ∘ (g ∘ f) ≠ (h ∘ g) ∘ f`.
    Associativity { h: usize, g: usize, f: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CompositeTyping { g, f, h } => {
                write!(out, "composite of #{g} after #{f} is #{h}, which has the wrong source or target")
            }
            Violation::IdentityLaw { f } => write!(out, "identity law fails for morphism #{f}"),
            Violation::Associativity { h, g, f } => write!(out, "associativity fails for (#{h}, #{g}, #{f})"),
        }
    }
}

/// A finite category. Objects and morphisms are identified by index.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    out: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    hom: Vec<Vec<usize>>,
    comp_offset: Vec<usize>,
    comp: Vec<u32>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({} objects, {} morphisms)", self.objects.len(), self.morphisms.len())
    }
}

impl FinCat {
    /// Builds a category, asking `compose(g, f)` for every composable pair.
    ///
    /// Only the shape of the table is checked here; the category laws are
    /// checked by [`FinCat::validate`].
    pub fn from_fn<F>(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut compose: F,
    ) -> Result<FinCat, CatError>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let n = objects.len();
        for m in &morphisms {
            if m.src >= n || m.tgt >= n {
                return Err(CatError::UnknownObject(m.name.clone()));
            }
        }
        if identities.len() != n {
            return Err(CatError::BadIdentity { object: objects.get(identities.len()).cloned().unwrap_or_default() });
        }
        for (a, &i) in identities.iter().enumerate() {
            if i >= morphisms.len() || morphisms[i].src != a || morphisms[i].tgt != a {
                return Err(CatError::BadIdentity { object: objects[a].clone() });
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut out_pos = vec![0; morphisms.len()];
        let mut hom = vec![Vec::new(); n * n];
        for (i, m) in morphisms.iter().enumerate() {
            out_pos[i] = out[m.src].len();
            out[m.src].push(i);
            hom[m.src * n + m.tgt].push(i);
        }
        let mut comp_offset = Vec::with_capacity(morphisms.len() + 1);
        let mut total = 0;
        for m in &morphisms {
            comp_offset.push(total);
            total += out[m.tgt].len();
        }
        comp_offset.push(total);
        let mut comp = Vec::with_capacity(total);
        for (f, m) in morphisms.iter().enumerate() {
            for &g in &out[m.tgt] {
                match compose(g, f) {
                    Some(h) if h < morphisms.len() => comp.push(h as u32),
                    _ => {
                        return Err(CatError::MissingComposite {
                            g: morphisms[g].name.clone(),
                            f: morphisms[f].name.clone(),
                        })
                    }
                }
            }
        }
        Ok(FinCat { objects, morphisms, identities, out, out_pos, hom, comp_offset, comp })
    }

    /// Builds a category from explicit `(g, f) ↦ g ∘ f` entries. Entries with
    /// an identity factor may be omitted and are inferred.
    pub fn from_table<I>(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        entries: I,
    ) -> Result<FinCat, CatError>
    where
        I: IntoIterator<Item = ((usize, usize), usize)>,
    {
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for ((g, f), h) in entries {
            let name = |i: usize| morphisms.get(i).map(|m| m.name.clone()).unwrap_or_else(|| format!("#{i}"));
            if g >= morphisms.len() || f >= morphisms.len() || morphisms[f].tgt != morphisms[g].src {
                return Err(CatError::NotComposable { g: name(g), f: name(f) });
            }
            if table.insert((g, f), h).is_some() {
                return Err(CatError::DuplicateComposite { g: name(g), f: name(f) });
            }
        }
        let is_identity: Vec<bool> = {
            let mut v = vec![false; morphisms.len()];
            for &i in &identities {
                if let Some(slot) = v.get_mut(i) {
                    *slot = true;
                }
            }
            v
        };
        FinCat::from_fn(objects, morphisms, identities, |g, f| {
            table.get(&(g, f)).copied().or_else(|| {
                if is_identity[g] {
                    Some(f)
                } else if is_identity[f] {
                    Some(g)
                } else {
                    None
                }
            })
        })
    }

    /// Builds and validates in one step.
    pub fn checked(self) -> Result<FinCat, CatError> {
        match self.validate().into_iter().next() {
            None => Ok(self),
            Some(v) => Err(CatError::Invalid(v)),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    /// Morphisms with source `a`.
    pub fn out_of(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.objects.len() + b]
    }

    /// `g ∘ f`. Panics if `tgt f ≠ src g`.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.tgt(f), self.src(g), "composing non-composable morphisms");
        self.comp[self.comp_offset[f] + self.out_pos[g]] as usize
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        (self.tgt(f) == self.src(g)).then(|| self.compose(g, f))
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// All composable pairs `(g, f)` with their composite.
    pub fn composition_entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        (0..self.morphisms.len())
            .flat_map(move |f| self.out[self.tgt(f)].iter().map(move |&g| ((g, f), self.compose(g, f))))
    }

    pub fn composable_pair_count(&self) -> usize {
        self.comp.len()
    }

    /// Exhaustively checks typing of composites, identity laws, and associativity.
    /// Returns every violation found; an empty list means the table is a category.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for f in 0..self.morphisms.len() {
            for &g in &self.out[self.tgt(f)] {
                let h = self.comp[self.comp_offset[f] + self.out_pos[g]] as usize;
                if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                    violations.push(Violation::CompositeTyping { g, f, h });
                }
            }
        }
        if !violations.is_empty() {
            // associativity lookups are meaningless on a mistyped table
            return violations;
        }
        for f in 0..self.morphisms.len() {
            let m = &self.morphisms[f];
            if self.compose(f, self.identities[m.src]) != f || self.compose(self.identities[m.tgt], f) != f {
                violations.push(Violation::IdentityLaw { f });
            }
        }
        let assoc: Vec<Violation> = (0..self.morphisms.len())
            .into_par_iter()
            .flat_map_iter(|f| {
                let mut found = Vec::new();
                for &g in &self.out[self.tgt(f)] {
                    let gf = self.compose(g, f);
                    for &h in &self.out[self.tgt(g)] {
                        if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                            found.push(Violation::Associativity { h, g, f });
                        }
                    }
                }
                found
            })
            .collect();
        violations.extend(assoc);
        violations
    }

    /// Renames objects and morphisms, keeping the table.
    pub fn renamed(&self, objects: Vec<String>, morphisms: Vec<String>) -> FinCat {
        assert_eq!(objects.len(), self.objects.len());
        assert_eq!(morphisms.len(), self.morphisms.len());
        let mut c = self.clone();
        c.objects = objects;
        for (m, name) in c.morphisms.iter_mut().zip(morphisms) {
            m.name = name;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat_with_table(entry: usize) -> FinCat {
        // one object, morphisms {id, a, b} with a monoid table that fails
        // associativity when the entry for a∘b is perturbed
        let objects = vec!["x".to_string()];
        let morphisms = ["id", "a", "b"].iter().map(|n| Morphism { name: n.to_string(), src: 0, tgt: 0 }).collect();
        // a∘a = a, a∘b = `entry`, b∘a = b, b∘b = b
        let table = vec![((1, 1), 1), ((1, 2), entry), ((2, 1), 2), ((2, 2), 2)];
        FinCat::from_table(objects, morphisms, vec![0], table).unwrap()
    }

    #[test]
    fn terminal_is_valid() {
        assert!(terminal().validate().is_empty());
    }

    #[test]
    fn broken_associativity_reported() {
        // left-zero semigroup: x∘y = x. Perturbing a∘b breaks it.
        assert!(cat_with_table(1).validate().is_empty());
        let bad = cat_with_table(0);
        let v = bad.validate();
        assert!(v.contains(&Violation::Associativity { h: 1, g: 1, f: 2 }), "{v:?}");
    }

    #[test]
    fn missing_composite_is_an_error() {
        let objects = vec!["x".to_string()];
        let morphisms = ["id", "a"].iter().map(|n| Morphism { name: n.to_string(), src: 0, tgt: 0 }).collect();
        let err = FinCat::from_table(objects, morphisms, vec![0], vec![]).unwrap_err();
        assert_eq!(err, CatError::MissingComposite { g: "a".into(), f: "a".into() });
    }
}
