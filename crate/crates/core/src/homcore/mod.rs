//! Tensor products of presheaves, integrators, Bousfield-Kan complexes, and
//! the comparison maps used to test homological asphericity.

mod bk;
mod integrator;
mod lambda;
mod resolution;
mod tensor;

pub use bk::{bk_complex, bk_generator_counts, presheaf_homology, presheaf_homology_within, BkComplex};
pub use integrator::{bousfield_kan_integrator, delta_integrator_complex, l_delta, FreeIntegrator, IntegratorCheck};
pub use lambda::{
    check_wab_aspherical, induced_hom_map, lambda_map, lambda_representables, presheaf_map_chain_map,
    AsphericityReport, ComparisonMap, SliceVerdict,
};
pub use resolution::{resolution_integrator, resolved_homology};
pub use tensor::{tensor, tensor_presentation, tensor_symmetry, PresentationIso, TensorResult};

use thiserror::Error;

use crate::presheaf::PresheafError;
use crate::zlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("presheaves live over bases that are not opposite or not equal as required")]
    BaseMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error("degree {degree} needs {generators} generators, above the budget of {budget}")]
    TooLarge { degree: usize, generators: u128, budget: u128 },
    #[error("not an integrator: {0}")]
    NotAnIntegrator(String),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{
        build_delta_trunc, build_poset, category_of_elements, cyclic_group_cat, discrete, opposite, terminal,
        DeltaTrunc, FinFunctor,
    };
    use crate::presheaf::{colim_ab, constant_z, whitehead, AbPresheaf, SetPresheaf};
    use crate::simplicial::{gamma, nerve_complex, unnormalized_complex, TruncSimpAb};
    use crate::zlinalg::{ChainComplex, FgAbGroup, IntMatrix};

    fn point(n: usize) -> Vec<FgAbGroup> {
        (0..n).map(|k| if k == 0 { FgAbGroup::free(1) } else { FgAbGroup::trivial() }).collect()
    }

    fn cospan() -> Arc<crate::fincat::FinCat> {
        Arc::new(build_poset(&["a", "b", "c"], &[(0, 2), (1, 2)]).unwrap())
    }

    #[test]
    fn group_homology_of_bz2() {
        let bz2 = Arc::new(cyclic_group_cat(2));
        let z2 = FgAbGroup::cyclic(2);
        let expected = vec![FgAbGroup::free(1), z2.clone(), FgAbGroup::trivial(), z2, FgAbGroup::trivial()];
        for normalized in [true, false] {
            assert_eq!(presheaf_homology(&constant_z(bz2.clone()), 5, normalized), expected);
        }
    }

    #[test]
    fn representables_are_acyclic() {
        let d2 = Arc::new(build_delta_trunc(2));
        for a in 0..3 {
            let x = whitehead(&SetPresheaf::representable(d2.clone(), a));
            assert_eq!(presheaf_homology(&x, 3, true), point(3));
        }
    }

    #[test]
    fn h0_is_the_colimit() {
        let bz2 = Arc::new(cyclic_group_cat(2));
        let sign = AbPresheaf::new(bz2, vec![1], vec![IntMatrix::identity(1), IntMatrix::from_rows(&[[-1]])]).unwrap();
        assert_eq!(presheaf_homology(&sign, 1, true)[0], colim_ab(&sign));
        assert_eq!(presheaf_homology(&sign, 1, true)[0], FgAbGroup::cyclic(2));
    }

    #[test]
    fn elements_theorem_on_representable() {
        let p = cospan();
        let x = SetPresheaf::representable(p.clone(), 2).coproduct(&SetPresheaf::representable(p.clone(), 0)).unwrap();
        let el = category_of_elements(&x);
        assert_eq!(presheaf_homology(&whitehead(&x), 3, true), nerve_complex(&el.cat, 3, true).homology_all());
    }

    #[test]
    fn tensor_with_representables() {
        let p = cospan();
        let op = Arc::new(opposite(&p));
        for a in 0..3 {
            let x = whitehead(&SetPresheaf::representable(p.clone(), a));
            for a2 in 0..3 {
                let y = whitehead(&SetPresheaf::representable(op.clone(), a2));
                let t = tensor(&x, &y).unwrap();
                assert_eq!(t.group, FgAbGroup::free(p.hom(a2, a).len()));
                let iso = tensor_symmetry(&x, &y).unwrap();
                assert!(iso.verify(&t.presentation, &tensor(&y, &x).unwrap().presentation));
            }
            assert_eq!(tensor(&x, &constant_z(op.clone())).unwrap().group, colim_ab(&x));
        }
        assert_eq!(tensor(&constant_z(p.clone()), &constant_z(p)), Err(HomError::BaseMismatch));
    }

    #[test]
    fn integrators() {
        let d = DeltaTrunc::new(3);
        assert!(l_delta(&d).check().iter().all(IntegratorCheck::passes));
        let p = cospan();
        let bk = bousfield_kan_integrator(p.clone(), 3);
        assert!(bk.check().iter().all(IntegratorCheck::passes));
        let x = whitehead(&SetPresheaf::representable(p.clone(), 2));
        assert_eq!(bk.integrate(&x).unwrap(), bk_complex(&x, 3, false).complex);
        let simp = gamma(&ChainComplex::concentrated(1, 1, 3));
        assert_eq!(l_delta(&d).integrate(&simp.to_presheaf(&d)).unwrap(), unnormalized_complex(&simp));
    }

    #[test]
    fn delta_integrator_through_tensor() {
        let x = TruncSimpAb::constant(1, 3);
        assert_eq!(delta_integrator_complex(&x).unwrap(), unnormalized_complex(&x));
        let y = gamma(
            &ChainComplex::new(vec![1, 1, 0], vec![IntMatrix::from_rows(&[[2]]), IntMatrix::zeros(1, 0)]).unwrap(),
        );
        assert_eq!(delta_integrator_complex(&y).unwrap(), unnormalized_complex(&y));
    }

    #[test]
    fn lambda_and_asphericity() {
        let e = Arc::new(terminal());
        let p = cospan();
        let to_e = FinFunctor::to_terminal(p.clone(), e.clone()).unwrap();
        assert!(lambda_map(&to_e, &constant_z(e.clone()), 3, true).unwrap().is_quasi_iso());
        assert!(induced_hom_map(&to_e, 3, false).unwrap().is_quasi_iso());
        assert!(check_wab_aspherical(&to_e, 3).passes());
        let two = Arc::new(discrete(&["x", "y"]));
        let squash = FinFunctor::to_terminal(two, e.clone()).unwrap();
        let lam = lambda_map(&squash, &constant_z(e.clone()), 2, true).unwrap();
        assert_eq!(lam.iso, vec![false, true]);
        assert!(!check_wab_aspherical(&squash, 2).passes());
        let id = FinFunctor::identity(p.clone());
        assert!(check_wab_aspherical(&id, 3).passes());
        assert_eq!(lambda_representables(&id, 3).unwrap(), vec![true; 3]);
        // e → 0 ≤ 1 picking the top: the slice over 0 is empty
        let arrow = Arc::new(build_poset(&["0", "1"], &[(0, 1)]).unwrap());
        let top = FinFunctor::point(e, arrow, 1).unwrap();
        let report = check_wab_aspherical(&top, 2);
        assert_eq!(report.objects.iter().map(|v| v.aspherical).collect::<Vec<_>>(), vec![false, true]);
        assert_eq!(lambda_representables(&top, 2).unwrap(), vec![false, true]);
    }

    #[test]
    fn resolutions() {
        let bz3 = Arc::new(cyclic_group_cat(3));
        let z3 = FgAbGroup::cyclic(3);
        let expected = vec![FgAbGroup::free(1), z3.clone(), FgAbGroup::trivial(), z3, FgAbGroup::trivial()];
        assert_eq!(resolved_homology(&constant_z(bz3.clone()), 5).unwrap(), expected);
        // one generator per degree, as in the periodic resolution
        let l = resolution_integrator(bz3, 4).unwrap();
        assert!((0..=4).all(|n| l.generators(n).len() == 1));
        let d2 = DeltaTrunc::new(2);
        for a in 0..3 {
            let x = whitehead(&SetPresheaf::representable(d2.cat().clone(), a));
            assert_eq!(resolved_homology(&x, 4).unwrap(), point(4));
        }
        let two = Arc::new(discrete(&["x", "y"]));
        assert_eq!(resolved_homology(&constant_z(two), 2).unwrap(), vec![FgAbGroup::free(2), FgAbGroup::trivial()]);
    }

    #[test]
    fn budget_is_enforced() {
        let d2 = Arc::new(build_delta_trunc(2));
        let x = whitehead(&SetPresheaf::representable(d2, 2));
        let counts = bk_generator_counts(&x, 2, true);
        // |Hom(Δ_i, Δ_2)| = 3, 6, 10
        assert_eq!(counts[0], 19);
        assert!(matches!(presheaf_homology_within(&x, 2, true, 5), Err(HomError::TooLarge { degree: 0, .. })));
    }
}
