//! Truncated simplicial abelian groups, nerves, the normalized and
//! unnormalized chain complexes, and the Dold-Kan inverse `Γ`.

mod gamma;
mod nerve;
mod simp;

pub use gamma::{gamma, gamma_roundtrip, DoldKanRoundtrip};
pub use nerve::{nerve_complex, nerve_trunc, NerveTrunc};
pub use simp::{moore_normalized, unnormalized_complex, MooreComplex, SimplicialIdentity, TruncSimpAb};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("simplicial data has the wrong shape: {0}")]
    Shape(String),
    #[error("simplicial identity fails: {0:?}")]
    Identity(SimplicialIdentity),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{build_poset, cyclic_group_cat, terminal, DeltaTrunc, MonotoneMap};
    use crate::zlinalg::{ChainComplex, FgAbGroup, IntMatrix};

    fn homology(c: &ChainComplex) -> Vec<FgAbGroup> {
        c.homology_all()
    }

    #[test]
    fn nerve_of_point_and_arrow() {
        let e = Arc::new(terminal());
        let n = nerve_trunc(e.clone(), 3);
        assert!((0..=3).all(|k| n.simplices(k).len() == 1));
        assert_eq!(n.nondegenerate(0).len(), 1);
        assert!((1..=3).all(|k| n.nondegenerate(k).is_empty()));
        assert!(n.to_simp_ab().validate().is_empty());
        let arrow = Arc::new(build_poset(&["0", "1"], &[(0, 1)]).unwrap());
        let n = nerve_trunc(arrow, 3);
        let counts: Vec<usize> = (0..=3).map(|k| n.nondegenerate(k).len()).collect();
        assert_eq!(counts, vec![2, 1, 0, 0]);
        assert!(n.to_simp_ab().validate().is_empty());
    }

    #[test]
    fn nerve_of_bz2() {
        let bz2 = Arc::new(cyclic_group_cat(2));
        let n = nerve_trunc(bz2.clone(), 4);
        assert!((0..=4).all(|k| n.nondegenerate(k).len() == 1));
        assert!(n.to_simp_ab().validate().is_empty());
        let h = homology(&nerve_complex(&bz2, 5, true));
        let z2 = FgAbGroup::cyclic(2);
        assert_eq!(h, vec![FgAbGroup::free(1), z2.clone(), FgAbGroup::trivial(), z2, FgAbGroup::trivial()]);
        assert_eq!(homology(&nerve_complex(&bz2, 5, false)), h);
    }

    #[test]
    fn constant_simplicial_group() {
        let x = TruncSimpAb::constant(1, 4);
        assert!(x.validate().is_empty());
        let c = unnormalized_complex(&x);
        let expected: Vec<IntMatrix> =
            (1..=4).map(|n| IntMatrix::from_rows(&[[if n % 2 == 0 { 1 } else { 0 }]])).collect();
        assert_eq!(c.differentials(), expected.as_slice());
        let m = moore_normalized(&x);
        assert_eq!(m.complex.ranks(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn gamma_of_shifted_z() {
        let c = ChainComplex::concentrated(1, 1, 4);
        let g = gamma(&c);
        // surjections [n] ↠ [1] number n
        assert_eq!(g.ranks(), &[0, 1, 2, 3, 4]);
        let round = gamma_roundtrip(&c);
        assert_eq!(round.moore.complex.ranks(), &[0, 1, 0, 0, 0]);
        assert!(round.is_verified());
        assert_eq!(gamma(&ChainComplex::concentrated(1, 0, 3)), TruncSimpAb::constant(1, 3));
    }

    #[test]
    fn gamma_roundtrip_with_torsion() {
        let c = ChainComplex::new(
            vec![1, 2, 1, 0],
            vec![IntMatrix::from_rows(&[[2, 0]]), IntMatrix::from_rows(&[[0], [3]]), IntMatrix::zeros(1, 0)],
        )
        .unwrap();
        let round = gamma_roundtrip(&c);
        assert!(round.is_verified());
        let x = &round.simplicial;
        for n in 0..=3 {
            assert_eq!(round.moore.complex.rank(n) + x.degenerate_rank(n), x.ranks()[n]);
        }
        assert_eq!(homology(&unnormalized_complex(x)), homology(&c));
    }

    #[test]
    fn presheaf_on_delta() {
        let x = gamma(&ChainComplex::concentrated(2, 1, 3));
        let d = DeltaTrunc::new(3);
        let p = x.to_presheaf(&d);
        assert_eq!(TruncSimpAb::from_presheaf(&d, &p).unwrap(), x);
        let theta = MonotoneMap::new(3, vec![0, 2]);
        assert_eq!(x.operator(&theta), x.d(2, 1).mul(x.d(3, 3)));
    }
}
