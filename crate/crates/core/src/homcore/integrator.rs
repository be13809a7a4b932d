use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{tensor, HomError};
use crate::fincat::{enumerate_chains, opposite, ChainIndex, DeltaTrunc, FinCat, MonotoneMap};
use crate::presheaf::{whitehead, AbPresheaf, SetPresheaf};
use crate::simplicial::TruncSimpAb;
use crate::zlinalg::{ChainComplex, FgAbGroup, IntMatrix};

/// A complex `L_0 ← L_1 ← …` of free presheaves on `A^op`, with
/// `L_n = ⊕_i ℤ^(a_i)`, given by the objects `a_i` of each degree and, for
/// each generator, its differential as a combination of generators of the
/// degree below along morphisms of `A` (by Yoneda).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeIntegrator {
    base: Arc<FinCat>,
    generators: Vec<Vec<usize>>,
    /// `differentials[n−1][i]` lists `(coefficient, j, g : a_j → a_i)` for
    /// generator `i` of degree `n`.
    differentials: Vec<Vec<Vec<(i64, usize, usize)>>>,
}

/// Result of checking an integrator object by object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegratorCheck {
    pub object: usize,
    /// `ε` is onto ℤ and `coker d_1 ≅ ℤ` through it.
    pub augmented: bool,
    /// Homology of `L(c)` below the truncation, which must be `ℤ, 0, 0, …`.
    pub homology: Vec<FgAbGroup>,
}

impl IntegratorCheck {
    pub fn passes(&self) -> bool {
        self.augmented
            && self
                .homology
                .iter()
                .enumerate()
                .all(|(k, h)| if k == 0 { *h == FgAbGroup::free(1) } else { h.is_trivial() })
    }
}

impl FreeIntegrator {
    pub fn new(
        base: Arc<FinCat>,
        generators: Vec<Vec<usize>>,
        differentials: Vec<Vec<Vec<(i64, usize, usize)>>>,
    ) -> Result<Self, HomError> {
        if generators.is_empty() || differentials.len() + 1 != generators.len() {
            return Err(HomError::NotAnIntegrator("one differential per positive degree expected".into()));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.len() != generators[k + 1].len() {
                return Err(HomError::NotAnIntegrator(format!("degree {} has a differential per generator", k + 1)));
            }
            for (i, terms) in d.iter().enumerate() {
                for &(_, j, g) in terms {
                    let ok = j < generators[k].len()
                        && g < base.morphism_count()
                        && base.src(g) == generators[k][j]
                        && base.tgt(g) == generators[k + 1][i];
                    if !ok {
                        return Err(HomError::NotAnIntegrator(format!(
                            "bad term in d of generator {i}, degree {}",
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(FreeIntegrator { base, generators, differentials })
    }

    pub fn trunc(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn generators(&self, n: usize) -> &[usize] {
        &self.generators[n]
    }

    /// `L(c)`: the complex of groups `⊕_i ℤ^(Hom_A(a_i, c))`.
    pub fn evaluate(&self, c: usize) -> ChainComplex {
        let ranks = (0..=self.trunc()).map(|n| self.rank_at(n, c)).collect();
        let diffs = (1..=self.trunc()).map(|n| self.differential_at(n, c)).collect();
        ChainComplex::new(ranks, diffs).expect("integrator squares to zero")
    }

    /// Rank of `L_n(c)`.
    pub(crate) fn rank_at(&self, n: usize, c: usize) -> usize {
        self.generators[n].iter().map(|&a| self.base.hom(a, c).len()).sum()
    }

    /// `d_n` evaluated at `c`, on the bases `(i, h : a_i → c)` in
    /// generator-then-Hom order.
    pub(crate) fn differential_at(&self, n: usize, c: usize) -> IntMatrix {
        let base = &self.base;
        let layout = |gens: &[usize]| {
            let sizes: Vec<usize> = gens.iter().map(|&a| base.hom(a, c).len()).collect();
            crate::presheaf::offsets(&sizes)
        };
        let (src, tgt) = (layout(&self.generators[n]), layout(&self.generators[n - 1]));
        let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
        for (i, terms) in self.differentials[n - 1].iter().enumerate() {
            let a = self.generators[n][i];
            for (p, &h) in base.hom(a, c).iter().enumerate() {
                for &(coef, j, g) in terms {
                    // h ∘ g : a_j → c
                    let a_j = self.generators[n - 1][j];
                    let q = base.hom(a_j, c).binary_search(&base.compose(h, g)).unwrap();
                    triplets.push((tgt[j] + q, src[i] + p, BigInt::from(coef)));
                }
            }
        }
        IntMatrix::from_triplets(*tgt.last().unwrap(), *src.last().unwrap(), triplets)
    }

    /// Checks the augmentation and acyclicity at every object.
    pub fn check(&self) -> Vec<IntegratorCheck> {
        (0..self.base.object_count())
            .map(|c| {
                let l = self.evaluate(c);
                let eps = IntMatrix::from_triplets(1, l.rank(0), (0..l.rank(0)).map(|i| (0, i, 1i64)));
                let kills = self.trunc() == 0 || eps.mul(l.differential(1)).is_zero();
                let onto = l.rank(0) > 0;
                let homology = l.homology_all();
                let augmented = kills && onto && homology.first().is_none_or(|h| *h == FgAbGroup::free(1));
                IntegratorCheck { object: c, augmented, homology }
            })
            .collect()
    }

    /// `X ⊙_A L`, with `X ⊙ ℤ^(a_i) = X(a_i)` in each summand.
    pub fn integrate(&self, x: &AbPresheaf) -> Result<ChainComplex, HomError> {
        if x.base() != &self.base {
            return Err(HomError::BaseMismatch);
        }
        let layout: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|gens| crate::presheaf::offsets(&gens.iter().map(|&a| x.rank(a)).collect::<Vec<_>>()))
            .collect();
        let diffs = (1..=self.trunc())
            .map(|n| {
                let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
                for (i, terms) in self.differentials[n - 1].iter().enumerate() {
                    for &(coef, j, g) in terms {
                        for (r, c, v) in x.action(g).entries() {
                            triplets.push((layout[n - 1][j] + r, layout[n][i] + c, v * coef));
                        }
                    }
                }
                IntMatrix::from_triplets(*layout[n - 1].last().unwrap(), *layout[n].last().unwrap(), triplets)
            })
            .collect();
        Ok(ChainComplex::new(layout.iter().map(|o| *o.last().unwrap()).collect(), diffs)?)
    }
}

/// `L_Δ` on `Δ_{≤k}`: one generator `Δ_n` per degree, `d = Σ (−1)^i δ_i`.
pub fn l_delta(delta: &DeltaTrunc) -> FreeIntegrator {
    let k = delta.bound();
    let generators = (0..=k).map(|n| vec![n]).collect();
    let differentials = (1..=k)
        .map(|n| {
            let terms = (0..=n)
                .map(|i| (if i % 2 == 0 { 1 } else { -1 }, 0, delta.index_of(&MonotoneMap::coface(n, i))))
                .collect();
            vec![terms]
        })
        .collect();
    FreeIntegrator::new(delta.cat().clone(), generators, differentials).expect("L_Δ is well formed")
}

/// `ℓ_A` truncated at `n`: generators are the chains `φ` with object `φ(n)`.
/// Faces below the last are attached along identities, the last along the
/// last arrow.
pub fn bousfield_kan_integrator(a: Arc<FinCat>, n: usize) -> FreeIntegrator {
    let chains: Vec<_> = (0..=n).map(|k| enumerate_chains(&a, k, false)).collect();
    let generators = chains.iter().map(|chs| chs.iter().map(|ch| ch.last(&a)).collect()).collect();
    let differentials = (1..=n)
        .map(|k| {
            let index = ChainIndex::new(&chains[k - 1]);
            chains[k]
                .iter()
                .map(|phi| {
                    (0..=k)
                        .map(|i| {
                            let j = index.get(&phi.face(&a, i)).unwrap();
                            let g = if i < k { a.identity(phi.last(&a)) } else { phi.arrows[k - 1] };
                            (if i % 2 == 0 { 1 } else { -1 }, j, g)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    FreeIntegrator::new(a, generators, differentials).expect("ℓ_A is well formed")
}

/// `X ⊙ L_Δ` computed with the coend presentation in each degree. The
/// degree-`n` term is identified with `X_n` by the Yoneda evaluation
/// `ξ ⊗ θ ↦ X(θ)ξ`, whose section is `ξ ↦ ξ ⊗ id`.
pub fn delta_integrator_complex(x: &TruncSimpAb) -> Result<ChainComplex, HomError> {
    let t = x.trunc();
    let delta = DeltaTrunc::new(t);
    let cat = delta.cat();
    let op = Arc::new(opposite(cat));
    let xp = x.to_presheaf(&delta);
    let reps: Vec<AbPresheaf> = (0..=t).map(|n| whitehead(&SetPresheaf::representable(op.clone(), n))).collect();
    let mut evals = Vec::with_capacity(t + 1);
    let mut sections = Vec::with_capacity(t + 1);
    for (n, rep) in reps.iter().enumerate() {
        let result = tensor(&xp, rep)?;
        let off = super::tensor::tensor_offsets(&xp, rep);
        // rep(Δ_k) has basis Hom_Δ(Δ_n, Δ_k) in index order
        let mut ev: Vec<(usize, usize, BigInt)> = Vec::new();
        for k in 0..=t {
            for (p, &theta) in cat.hom(n, k).iter().enumerate() {
                let m = xp.action(theta);
                for (r, c, v) in m.entries() {
                    ev.push((r, off[k] + c * rep.rank(k) + p, v.clone()));
                }
            }
        }
        let ev = IntMatrix::from_triplets(x.ranks()[n], off[t + 1], ev);
        if !ev.mul(&result.presentation).is_zero() || result.group != FgAbGroup::free(x.ranks()[n]) {
            return Err(HomError::NotAnIntegrator(format!("Yoneda evaluation fails in degree {n}")));
        }
        let id_pos = cat.hom(n, n).iter().position(|&f| cat.is_identity(f)).unwrap();
        let sect = IntMatrix::from_triplets(
            off[t + 1],
            x.ranks()[n],
            (0..x.ranks()[n]).map(|xi| (off[n] + xi * rep.rank(n) + id_pos, xi, 1i64)),
        );
        debug_assert!(ev.mul(&sect).is_identity());
        evals.push(ev);
        sections.push(sect);
    }
    let diffs = (1..=t)
        .map(|n| {
            // ξ ⊗ θ ↦ Σ (−1)^i ξ ⊗ θ δ_i on generators of X ⊙ L_n
            let (src, tgt) = (&reps[n], &reps[n - 1]);
            let off_s = super::tensor::tensor_offsets(&xp, src);
            let off_t = super::tensor::tensor_offsets(&xp, tgt);
            let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
            for k in 0..=t {
                for (p, &theta) in cat.hom(n, k).iter().enumerate() {
                    for i in 0..=n {
                        let composite = cat.compose(theta, delta.index_of(&MonotoneMap::coface(n, i)));
                        let q = cat.hom(n - 1, k).binary_search(&composite).unwrap();
                        for xi in 0..xp.rank(k) {
                            let v = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                            triplets.push((off_t[k] + xi * tgt.rank(k) + q, off_s[k] + xi * src.rank(k) + p, v));
                        }
                    }
                }
            }
            let lifted = IntMatrix::from_triplets(off_t[t + 1], off_s[t + 1], triplets);
            evals[n - 1].mul(&lifted).mul(&sections[n])
        })
        .collect();
    Ok(ChainComplex::new(x.ranks().to_vec(), diffs)?)
}
