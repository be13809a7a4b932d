mod common;

use std::sync::Arc;

use cathom::fincat::{category_of_elements, connected_components, opposite, DeltaTrunc, FinFunctor};
use cathom::homcore::{presheaf_homology, resolved_homology, tensor, tensor_symmetry};
use cathom::presheaf::{colim_ab, constant_z, restrict_ab, whitehead};
use cathom::random::{self, chain_complex, free_presheaf, set_presheaf, simplicial_group, unimodular};
use cathom::simplicial::{gamma_roundtrip, moore_normalized, nerve_complex, unnormalized_complex};
use cathom::theta::{hom_count, wreath_hom, wreath_objects, wreath_trunc};
use cathom::zlinalg::{smith_normal_form, ChainComplex, ChainMap, FgAbGroup, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

/// `P_n` conjugation on every degree, as a chain isomorphism `c → c'`.
fn change_basis(rng: &mut impl Rng, c: &ChainComplex) -> ChainMap {
    let ps: Vec<(IntMatrix, IntMatrix)> = c.ranks().iter().map(|&r| unimodular(rng, r, 3 * r)).collect();
    let diffs = (1..=c.trunc()).map(|n| ps[n - 1].0.mul(c.differential(n)).mul(&ps[n].1)).collect();
    let target = ChainComplex::new(c.ranks().to_vec(), diffs).unwrap();
    ChainMap::new(c.clone(), target, ps.into_iter().map(|p| p.0).collect()).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn smith_form_is_a_factorization(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        prop_assert!(snf.u.mul(&snf.u_inv).is_identity() && snf.v.mul(&snf.v_inv).is_identity());
        for (r, c, v) in snf.s.entries() {
            prop_assert!(r == c && !v.is_zero());
        }
        for w in snf.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.diagonal.iter().all(|d| *d > BigInt::zero()));
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn homology_ignores_bases(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = chain_complex(&mut rng, 4, 3);
        let f = change_basis(&mut rng, &c);
        prop_assert!(f.is_isomorphism());
        prop_assert_eq!(c.homology_all(), f.target().homology_all());
    }

    #[test]
    fn homology_isos_compose(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = chain_complex(&mut rng, 3, 3);
        let f = change_basis(&mut rng, &c);
        let g = change_basis(&mut rng, f.target());
        let zero = ChainMap::new(
            g.target().clone(),
            g.target().clone(),
            g.target().ranks().iter().map(|&r| IntMatrix::zeros(r, r)).collect(),
        )
        .unwrap();
        for (a, b) in [(&f, &g), (&g, &zero)] {
            let ba = b.after(a).unwrap();
            let both = a.is_homology_iso(2).unwrap().iter().all(|&x| x) && b.is_homology_iso(2).unwrap().iter().all(|&x| x);
            if both {
                prop_assert!(ba.is_homology_iso(2).unwrap().iter().all(|&x| x));
            }
        }
    }

    #[test]
    fn dold_kan_roundtrip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = chain_complex(&mut rng, 4, 3);
        let rt = gamma_roundtrip(&c);
        prop_assert!(rt.is_verified());
        prop_assert!(rt.simplicial.validate().is_empty());
    }

    #[test]
    fn moore_and_unnormalized_agree(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x = simplicial_group(&mut rng, 3, 2);
        prop_assert!(x.validate().is_empty());
        prop_assert_eq!(moore_normalized(&x).complex.homology_all(), unnormalized_complex(&x).homology_all());
    }

    #[test]
    fn bk_normalization(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cats = common::small_categories();
        let (_, a) = &cats[rng.gen_range(0..cats.len())];
        let x = free_presheaf(&mut rng, a, 2);
        prop_assert_eq!(presheaf_homology(&x, 3, true), presheaf_homology(&x, 3, false));
    }

    #[test]
    fn resolutions_agree_with_bk(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cats = common::small_categories();
        let (_, a) = &cats[rng.gen_range(0..cats.len())];
        let x = free_presheaf(&mut rng, a, 2);
        prop_assert_eq!(resolved_homology(&x, 3).unwrap(), presheaf_homology(&x, 3, true));
    }

    #[test]
    fn elements_theorem(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cats = common::small_categories();
        let (_, a) = &cats[rng.gen_range(0..cats.len())];
        let x = set_presheaf(&mut rng, a, 3);
        let el = category_of_elements(&x);
        prop_assert_eq!(presheaf_homology(&whitehead(&x), 3, true), nerve_complex(&el.cat, 3, true).homology_all());
        let (components, _) = connected_components(&el.cat);
        prop_assert_eq!(colim_ab(&whitehead(&x)), FgAbGroup::free(components));
    }

    #[test]
    fn tensor_symmetry_and_units(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cats = common::small_categories();
        let (_, a) = &cats[rng.gen_range(0..cats.len())];
        let op = Arc::new(opposite(a));
        let x = free_presheaf(&mut rng, a, 2);
        let y = free_presheaf(&mut rng, &op, 2);
        let xy = tensor(&x, &y).unwrap();
        let yx = tensor(&y, &x).unwrap();
        prop_assert_eq!(&xy.group, &yx.group);
        prop_assert!(tensor_symmetry(&x, &y).unwrap().verify(&xy.presentation, &yx.presentation));
        prop_assert_eq!(tensor(&x, &constant_z(op)).unwrap().group, colim_ab(&x));
    }

    #[test]
    fn restriction_stays_valid(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        // Δ_{≤1} ⊂ Δ_{≤2} and Δ_{≤2} → e
        let d1 = DeltaTrunc::new(1);
        let d2 = DeltaTrunc::new(2);
        let obj = vec![0, 1];
        let mor = (0..d1.cat().morphism_count()).map(|f| d2.index_of(d1.map(f))).collect();
        let incl = FinFunctor::checked(d1.cat().clone(), d2.cat().clone(), obj, mor).unwrap();
        let y = free_presheaf(&mut rng, d2.cat(), 2);
        let r = restrict_ab(&incl, &y).unwrap();
        prop_assert!(r.validate().is_empty());
        let e = Arc::new(cathom::fincat::terminal());
        let squash = FinFunctor::to_terminal(d2.cat().clone(), e.clone()).unwrap();
        let z = free_presheaf(&mut rng, &e, 3);
        prop_assert!(restrict_ab(&squash, &z).unwrap().validate().is_empty());
    }

    #[test]
    fn wreath_hom_counts(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let cats = common::small_categories();
        let (_, a) = &cats[rng.gen_range(0..5)];
        let objects = wreath_objects(a, 2);
        let x = &objects[rng.gen_range(0..objects.len())];
        let y = &objects[rng.gen_range(0..objects.len())];
        prop_assert_eq!(wreath_hom(a, x, y).len() as u128, hom_count(a, x, y));
    }
}

#[test]
fn wreath_tables_are_categories() {
    for (name, a) in common::small_categories().into_iter().take(5) {
        let w = wreath_trunc(a, 2);
        assert!(w.cat().validate().is_empty(), "{name}");
    }
}
