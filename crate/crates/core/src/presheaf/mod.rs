//! Set-valued and free abelian presheaves on finite categories.

mod ab;
mod set;

pub(crate) use ab::offsets;
pub use ab::{
    colim_ab, colim_presentation, constant_z, restrict_ab, validate_map, whitehead, AbPresheaf, AbPresheafMap,
};
pub use set::{restrict_set, SetPresheaf};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresheafError {
    #[error("presheaf data has the wrong shape: {0}")]
    Shape(String),
    #[error("presheaves live over different base categories")]
    BaseMismatch,
    #[error("presheaf fails validation: {0}")]
    Invalid(PresheafViolation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresheafViolation {
    /// `X(id_a)` is not the identity.
    Identity { object: usize },
    /// `X(g ∘ f) ≠ X(f) X(g)`.
    Composition { g: usize, f: usize },
    /// Naturality square at `f` fails.
    Naturality { f: usize },
}

impl fmt::Display for PresheafViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresheafViolation::Identity { object } => write!(out, "identity at object #{object} acts nontrivially"),
            PresheafViolation::Composition { g, f } => write!(out, "action of #{g} after #{f} is not contravariant"),
            PresheafViolation::Naturality { f } => write!(out, "naturality square at morphism #{f} does not commute"),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{build_delta_trunc, build_poset, cyclic_group_cat, discrete, FinFunctor};
    use crate::zlinalg::{FgAbGroup, IntMatrix};

    #[test]
    fn whitehead_basics() {
        let d1 = Arc::new(build_delta_trunc(1));
        assert!(whitehead(&SetPresheaf::empty(d1.clone())).ranks().iter().all(|&r| r == 0));
        assert_eq!(whitehead(&SetPresheaf::terminal(d1.clone())), constant_z(d1.clone()));
        let rep = SetPresheaf::representable(d1.clone(), 1);
        assert!(rep.validate().is_empty());
        let w = whitehead(&rep);
        assert_eq!(w.ranks(), &[2, 3]);
        assert!(w.validate().is_empty());
    }

    #[test]
    fn colimits() {
        let p = Arc::new(build_poset(&["a", "b", "c"], &[(0, 2), (1, 2)]).unwrap());
        assert_eq!(colim_ab(&constant_z(p)), FgAbGroup::free(1));
        assert_eq!(colim_ab(&constant_z(Arc::new(discrete(&["x", "y"])))), FgAbGroup::free(2));
        // the sign representation of ℤ/2
        let bz2 = Arc::new(cyclic_group_cat(2));
        let sign = AbPresheaf::new(bz2, vec![1], vec![IntMatrix::identity(1), IntMatrix::from_rows(&[[-1]])]).unwrap();
        assert_eq!(colim_ab(&sign), FgAbGroup::cyclic(2));
    }

    #[test]
    fn restriction() {
        let p = Arc::new(build_poset(&["a", "b", "c"], &[(0, 2), (1, 2)]).unwrap());
        let id = FinFunctor::identity(p.clone());
        let z = constant_z(p.clone());
        assert_eq!(restrict_ab(&id, &z).unwrap(), z);
        let e = Arc::new(crate::fincat::terminal());
        let pick = FinFunctor::point(e.clone(), p.clone(), 2).unwrap();
        let w = whitehead(&SetPresheaf::representable(p.clone(), 2));
        assert_eq!(restrict_ab(&pick, &w).unwrap().ranks(), &[1]);
        let to_e = FinFunctor::to_terminal(p.clone(), e.clone()).unwrap();
        assert_eq!(restrict_ab(&to_e, &constant_z(e)).unwrap(), z);
    }

    #[test]
    fn map_validation() {
        let bz2 = Arc::new(cyclic_group_cat(2));
        let z = constant_z(bz2.clone());
        assert!(validate_map(&AbPresheafMap::identity(&z)).is_empty());
        assert!(validate_map(&AbPresheafMap::zero(&z, &z).unwrap()).is_empty());
        let sign = AbPresheaf::new(bz2, vec![1], vec![IntMatrix::identity(1), IntMatrix::from_rows(&[[-1]])]).unwrap();
        let broken = AbPresheafMap::new(z, sign, vec![IntMatrix::identity(1)]).unwrap();
        assert_eq!(validate_map(&broken), vec![PresheafViolation::Naturality { f: 1 }]);
    }

    #[test]
    fn broken_set_presheaf_rejected() {
        let bz2 = Arc::new(cyclic_group_cat(2));
        let labels = vec![vec!["x".to_string(), "y".to_string()]];
        // g acts as the constant map to x, but g∘g = e must act as the identity
        let err = SetPresheaf::new(bz2, labels, vec![vec![0, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, PresheafError::Invalid(PresheafViolation::Composition { .. })));
    }
}
