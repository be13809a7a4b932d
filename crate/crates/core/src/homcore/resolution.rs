//! Free resolutions of `ℤ` on `A^op` built degree by degree from kernels.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{FreeIntegrator, HomError};
use crate::fincat::FinCat;
use crate::presheaf::AbPresheaf;
use crate::zlinalg::{kernel_basis, left_inverse, smith_normal_form, FgAbGroup, IntMatrix};

/// A generator of degree `n`: an object and an element of `L_{n−1}` there.
struct Pending {
    object: usize,
    vector: Vec<(usize, BigInt)>,
}

/// An integrator truncated at `n`, with generators chosen greedily: at each
/// object, only what the generators already chosen fail to reach is added.
/// Objects with the fewest incoming arrows are visited first.
pub fn resolution_integrator(a: Arc<FinCat>, n: usize) -> Result<FreeIntegrator, HomError> {
    let objects = a.object_count();
    let mut order: Vec<usize> = (0..objects).collect();
    order.sort_by_key(|&c| (0..objects).map(|s| a.hom(s, c).len()).sum::<usize>());

    let mut zero = Vec::new();
    for &c in &order {
        if !zero.iter().any(|&g| !a.hom(g, c).is_empty()) {
            zero.push(c);
        }
    }
    let mut generators = vec![zero];
    let mut differentials: Vec<Vec<Vec<(i64, usize, usize)>>> = Vec::new();
    for k in 1..=n {
        let partial = FreeIntegrator::new(a.clone(), generators.clone(), differentials.clone())?;
        let below = &generators[k - 1];
        let layout = |c: usize| {
            let sizes: Vec<usize> = below.iter().map(|&g| a.hom(g, c).len()).collect();
            crate::presheaf::offsets(&sizes)
        };
        let mut chosen: Vec<Pending> = Vec::new();
        for &c in &order {
            let rank = partial.rank_at(k - 1, c);
            let d = if k == 1 {
                IntMatrix::from_triplets(1, rank, (0..rank).map(|i| (0, i, 1i64)))
            } else {
                partial.differential_at(k - 1, c)
            };
            let kernel = kernel_basis(&d);
            if kernel.cols() == 0 {
                continue;
            }
            let here = layout(c);
            let left = left_inverse(&kernel).expect("integer kernels are saturated");
            let mut images: Vec<Vec<(usize, BigInt)>> = Vec::new();
            for p in &chosen {
                let there = layout(p.object);
                for &h in a.hom(p.object, c) {
                    images.push(push(&a, below, &there, &here, c, h, &p.vector));
                }
            }
            // one generator at a time, so that endomorphisms of c are used
            loop {
                let coords = left.mul(&IntMatrix::from_columns(rank, images.clone()));
                let snf = smith_normal_form(&coords);
                let Some(i) = (0..kernel.cols()).find(|&i| i >= snf.rank() || !snf.diagonal[i].is_one()) else { break };
                let v = kernel.mul(&snf.u_inv.column_range(i..i + 1)).column(0).to_vec();
                for &h in a.hom(c, c) {
                    images.push(push(&a, below, &here, &here, c, h, &v));
                }
                chosen.push(Pending { object: c, vector: v });
            }
        }
        let mut terms = Vec::with_capacity(chosen.len());
        for p in &chosen {
            let here = layout(p.object);
            let mut t = Vec::with_capacity(p.vector.len());
            for (pos, coef) in &p.vector {
                let j = here.partition_point(|&o| o <= *pos) - 1;
                let g = a.hom(below[j], p.object)[pos - here[j]];
                let coef = coef.to_i64().ok_or_else(|| HomError::NotAnIntegrator("coefficient overflow".into()))?;
                t.push((coef, j, g));
            }
            terms.push(t);
        }
        generators.push(chosen.iter().map(|p| p.object).collect());
        differentials.push(terms);
    }
    FreeIntegrator::new(a, generators, differentials)
}

/// `L(h) v` for `h : c' → c`, on the bases `(j, g : a_j → c')` and `(j, h ∘ g)`.
fn push(
    a: &FinCat,
    gens: &[usize],
    there: &[usize],
    here: &[usize],
    c: usize,
    h: usize,
    v: &[(usize, BigInt)],
) -> Vec<(usize, BigInt)> {
    v.iter()
        .map(|(pos, coef)| {
            let j = there.partition_point(|&o| o <= *pos) - 1;
            let g = a.hom(gens[j], a.src(h))[pos - there[j]];
            let q = a.hom(gens[j], c).binary_search(&a.compose(h, g)).unwrap();
            (here[j] + q, coef.clone())
        })
        .collect()
}

/// `H_k(A, X)` for `0 ≤ k < n`, as the homology of `X ⊙ L` for a computed
/// resolution `L`. The resolution is checked object by object first.
pub fn resolved_homology(x: &AbPresheaf, n: usize) -> Result<Vec<FgAbGroup>, HomError> {
    let l = resolution_integrator(x.base().clone(), n)?;
    if let Some(bad) = l.check().into_iter().find(|c| !c.passes()) {
        return Err(HomError::NotAnIntegrator(format!("resolution is not exact at object {}", bad.object)));
    }
    Ok(l.integrate(x)?.homology_all())
}
