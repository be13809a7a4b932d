//! Wreath products `Δ≀A`, the functors `I_a`, `μ_A` and `m_n`, and width
//! truncations of Joyal's `Θ_n`.

mod cells;
mod tower;
mod wreath;

pub use cells::{
    cell_compose, cell_hom, m_cell, m_cell_map, slice_is_closed, theta_asphericity, Cell, CellMap, ThetaSliceReport,
    ThetaVerdict,
};
pub use tower::{
    delta_power, delta_theta_iso, i_functor, i_report, m_functor, m_into, mu_functor, mu_into, theta_trunc, IaReport,
    ThetaTower,
};
pub use wreath::{
    hom_count, wreath_compose, wreath_functor, wreath_hom, wreath_objects, wreath_trunc, WreathCategory,
    WreathMorphism, WreathObject,
};

use thiserror::Error;

use crate::fincat::CatError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("malformed wreath morphism: {0}")]
    BadMorphism(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Cat(#[from] CatError),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{build_poset, cyclic_group_cat, terminal, DeltaTrunc, FinFunctor, MonotoneMap};

    #[test]
    fn identity_and_vacuous_composites() {
        let a = Arc::new(build_poset(&["0", "1"], &[(0, 1)]).unwrap());
        let w = wreath_trunc(a.clone(), 2);
        for f in 0..w.cat().morphism_count() {
            let m = w.morphism(f);
            let id_src = WreathMorphism::identity(&a, m.src());
            let id_tgt = WreathMorphism::identity(&a, m.tgt());
            assert_eq!(&wreath_compose(&a, m, &id_src).unwrap(), m);
            assert_eq!(&wreath_compose(&a, &id_tgt, m).unwrap(), m);
        }
        let x = WreathObject::new(vec![1]);
        let pt = WreathObject::new(vec![]);
        let to_pt = WreathMorphism::new(&a, x.clone(), pt.clone(), MonotoneMap::new(0, vec![0, 0]), vec![]).unwrap();
        let id_pt = WreathMorphism::identity(&a, &pt);
        assert!(wreath_compose(&a, &id_pt, &to_pt).unwrap().family().is_empty());
        assert_eq!(wreath_compose(&a, &to_pt, &id_pt), Err(ThetaError::NotComposable));
    }

    #[test]
    fn wreath_over_arrow_is_a_category() {
        let a = Arc::new(build_poset(&["0", "1"], &[(0, 1)]).unwrap());
        let w = wreath_trunc(a.clone(), 2);
        assert_eq!(w.cat().object_count(), 7);
        assert!(w.cat().validate().is_empty());
        for x in w.objects() {
            for y in w.objects() {
                let (i, j) = (w.object_index(x).unwrap(), w.object_index(y).unwrap());
                assert_eq!(w.cat().hom(i, j).len() as u128, hom_count(&a, x, y));
            }
        }
    }

    #[test]
    fn theta_one_is_delta() {
        for k in 0..=3 {
            let tower = theta_trunc(1, k);
            let delta = DeltaTrunc::new(k);
            let iso = delta_theta_iso(&delta, tower.wreath(1)).unwrap();
            assert!(iso.is_isomorphism());
            assert_eq!(m_functor(1, k).obj_map(), iso.obj_map());
        }
        assert_eq!(*theta_trunc(0, 2).cat().as_ref(), terminal());
    }

    #[test]
    fn theta_two_width_two() {
        let tower = theta_trunc(2, 2);
        assert_eq!(tower.cat().object_count(), 13);
        let incl = tower.inclusion(1);
        assert!(incl.validate().is_empty() && incl.is_fully_faithful());
        let m = m_functor(2, 2);
        assert!(m.validate().is_empty());
        // (Δ_1, Δ_1) has index 1·3 + 1 in Δ × Δ
        assert_eq!(m.cod().object_name(m.obj(4)), "[D1;[D1;pt]]");
    }

    #[test]
    fn mu_and_i_a() {
        let bz2 = Arc::new(cyclic_group_cat(2));
        let delta = DeltaTrunc::new(2);
        let w = wreath_trunc(bz2.clone(), 2);
        let mu = mu_into(&delta, &w).unwrap();
        assert!(mu.validate().is_empty());
        let report = i_report(&delta, &w, 0).unwrap();
        assert_eq!(report, IaReport { faithful: true, fully_faithful: false, rigid: false });
        let arrow = Arc::new(build_poset(&["0", "1"], &[(0, 1)]).unwrap());
        let wa = wreath_trunc(arrow, 2);
        assert_eq!(i_report(&delta, &wa, 1).unwrap(), IaReport { faithful: true, fully_faithful: true, rigid: true });
        // (Δ_0, a) ↦ [Δ_0]
        assert!(mu.obj_map()[..bz2.object_count()].iter().all(|&o| w.object(o).width() == 0));
    }

    #[test]
    fn wreath_of_a_faithful_functor() {
        let e = Arc::new(terminal());
        let arrow = Arc::new(build_poset(&["0", "1"], &[(0, 1)]).unwrap());
        let we = wreath_trunc(e.clone(), 2);
        let wa = wreath_trunc(arrow.clone(), 2);
        let f = FinFunctor::point(e, arrow, 0).unwrap();
        let wf = wreath_functor(&f, &we, &wa).unwrap();
        assert!(wf.validate().is_empty() && wf.is_faithful());
    }

    #[test]
    fn cells_agree_with_tables() {
        let tower = theta_trunc(2, 1);
        let w = tower.wreath(2);
        for x in 0..w.cat().object_count() {
            for y in 0..w.cat().object_count() {
                let count = cell_hom(2, &tower.cell(2, x), &tower.cell(2, y)).len();
                assert_eq!(count, w.cat().hom(x, y).len());
            }
        }
        assert!(slice_is_closed(&tower, 0));
    }
}
