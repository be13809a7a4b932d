use num_bigint::BigInt;
use rayon::prelude::*;

use super::{bk_complex, BkComplex, HomError};
use crate::fincat::{slice_over, FinFunctor};
use crate::presheaf::{constant_z, restrict_ab, whitehead, AbPresheaf, AbPresheafMap, SetPresheaf};
use crate::simplicial::nerve_complex;
use crate::zlinalg::{ChainMap, FgAbGroup, IntMatrix};

/// A chain map together with its per-degree homology isomorphism flags
/// for degrees `0..trunc`.
#[derive(Clone, Debug)]
pub struct ComparisonMap {
    pub map: ChainMap,
    pub iso: Vec<bool>,
}

impl ComparisonMap {
    pub fn is_quasi_iso(&self) -> bool {
        self.iso.iter().all(|&b| b)
    }
}

/// `λ_{u,X} : X ⊙_B ℓ_A^B → X ⊙_B ℓ_B`, `⟨φ, x⟩ ↦ ⟨u∘φ, x⟩`. The source is
/// the Bousfield-Kan complex of `(u*)X` over `A`. In normalized mode chains
/// whose image contains an identity go to zero.
pub fn lambda_map(u: &FinFunctor, x: &AbPresheaf, n: usize, normalized: bool) -> Result<ComparisonMap, HomError> {
    let restricted = restrict_ab(u, x)?;
    let source = bk_complex(&restricted, n, normalized);
    let target = bk_complex(x, n, normalized);
    let map = chain_map_along(u, &source, &target)?;
    let iso = if n == 0 { Vec::new() } else { map.is_homology_iso(n - 1)? };
    Ok(ComparisonMap { map, iso })
}

fn chain_map_along(u: &FinFunctor, source: &BkComplex, target: &BkComplex) -> Result<ChainMap, HomError> {
    let (obj, mor) = (u.obj_map(), u.mor_map());
    let levels = (0..=source.trunc)
        .map(|k| {
            let index = target.index(k);
            let triplets: Vec<(usize, usize, BigInt)> = source.chains[k]
                .par_iter()
                .enumerate()
                .flat_map_iter(|(s, phi)| {
                    let image = index.get(&phi.map(obj, mor));
                    let r = source.offsets[k][s + 1] - source.offsets[k][s];
                    let from = source.offsets[k][s];
                    image
                        .map(|t| {
                            let to = target.offsets[k][t];
                            (0..r).map(|i| (to + i, from + i, BigInt::from(1))).collect::<Vec<_>>()
                        })
                        .unwrap_or_default()
                })
                .collect();
            IntMatrix::from_triplets(target.complex.rank(k), source.complex.rank(k), triplets)
        })
        .collect();
    Ok(ChainMap::new(source.complex.clone(), target.complex.clone(), levels)?)
}

/// `H(u, ℤ)`, as `λ_{u,ℤ_B}` (since `(u*)ℤ_B = ℤ_A`).
pub fn induced_hom_map(u: &FinFunctor, n: usize, normalized: bool) -> Result<ComparisonMap, HomError> {
    lambda_map(u, &constant_z(u.cod().clone()), n, normalized)
}

/// The chain map `φ_* : C(A, X) → C(A, Y)` on Bousfield-Kan complexes,
/// acting on each summand by the component at the chain's last object.
pub fn presheaf_map_chain_map(phi: &AbPresheafMap, n: usize, normalized: bool) -> Result<ComparisonMap, HomError> {
    let source = bk_complex(phi.source(), n, normalized);
    let target = bk_complex(phi.target(), n, normalized);
    let base = source.base.clone();
    let levels = (0..=n)
        .map(|k| {
            let blocks: Vec<IntMatrix> =
                source.chains[k].iter().map(|ch| phi.component(ch.last(&base)).clone()).collect();
            IntMatrix::block_diag(&blocks)
        })
        .collect();
    let map = ChainMap::new(source.complex, target.complex, levels)?;
    let iso = if n == 0 { Vec::new() } else { map.is_homology_iso(n - 1)? };
    Ok(ComparisonMap { map, iso })
}

/// Verdict for the slice `A/b`, certified in degrees `0..bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceVerdict {
    pub object: usize,
    pub slice_objects: usize,
    pub homology: Vec<FgAbGroup>,
    pub aspherical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsphericityReport {
    pub bound: usize,
    pub objects: Vec<SliceVerdict>,
}

impl AsphericityReport {
    pub fn passes(&self) -> bool {
        self.objects.iter().all(|v| v.aspherical)
    }
}

fn is_point_homology(h: &[FgAbGroup]) -> bool {
    h.iter().enumerate().all(|(k, g)| if k == 0 { *g == FgAbGroup::free(1) } else { g.is_trivial() })
}

/// For each `b`, whether `A/b` has the homology of a point below `n`.
pub fn check_wab_aspherical(u: &FinFunctor, n: usize) -> AsphericityReport {
    let objects = (0..u.cod().object_count())
        .into_par_iter()
        .map(|b| {
            let slice = slice_over(u, b);
            let homology = nerve_complex(&slice.cat, n, true).homology_all();
            let aspherical = is_point_homology(&homology);
            SliceVerdict { object: b, slice_objects: slice.cat.object_count(), homology, aspherical }
        })
        .collect();
    AsphericityReport { bound: n, objects }
}

/// `λ_{u,ℤ^(b)}` for every object `b`, as quasi-isomorphism flags.
pub fn lambda_representables(u: &FinFunctor, n: usize) -> Result<Vec<bool>, HomError> {
    (0..u.cod().object_count())
        .into_par_iter()
        .map(|b| {
            let x = whitehead(&SetPresheaf::representable(u.cod().clone(), b));
            Ok(lambda_map(u, &x, n, true)?.is_quasi_iso())
        })
        .collect()
}
