//! Seeded generators for test inputs: unimodular matrices, chain complexes,
//! simplicial abelian groups and presheaves.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fincat::FinCat;
use crate::presheaf::{whitehead, AbPresheaf, AbPresheafMap, SetPresheaf};
use crate::simplicial::{gamma, TruncSimpAb};
use crate::zlinalg::{ChainComplex, IntMatrix};

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random `n × n` unimodular matrix and its inverse, as a product of
/// `steps` elementary operations with small multipliers.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = vec![vec![0i64; n]; n];
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        u[i][i] = 1;
        inv[i][i] = 1;
    }
    if n >= 2 {
        for _ in 0..steps {
            let (i, j) = loop {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if i != j {
                    break (i, j);
                }
            };
            let k: i64 = *[-2, -1, 1, 2].choose(rng).unwrap();
            // u ← E·u with E = 1 + k e_ij (row op), inv ← inv·E⁻¹ (column op)
            for c in 0..n {
                u[i][c] += k * u[j][c];
            }
            for r in 0..n {
                inv[r][j] -= k * inv[r][i];
            }
        }
    }
    for i in 0..n {
        if rng.gen_bool(0.3) {
            u[i].iter_mut().for_each(|v| *v = -*v);
            inv.iter_mut().for_each(|row| row[i] = -row[i]);
        }
    }
    (IntMatrix::from_rows(&u), IntMatrix::from_rows(&inv))
}

/// A complex `C_0 ← … ← C_trunc` with ranks at most `max_rank`: a direct sum
/// of pieces `ℤ` and `ℤ --k--> ℤ`, with the basis of each degree scrambled.
pub fn chain_complex<R: Rng>(rng: &mut R, trunc: usize, max_rank: usize) -> ChainComplex {
    let mut ranks = vec![0; trunc + 1];
    // (degree, column, row, multiplier) for each piece ℤ → ℤ
    let mut arrows: Vec<(usize, usize, usize, i64)> = Vec::new();
    let pieces = rng.gen_range(1..=max_rank * (trunc + 1) + 1);
    for _ in 0..pieces {
        let n = rng.gen_range(0..=trunc);
        if n > 0 && rng.gen_bool(0.6) {
            if ranks[n] < max_rank && ranks[n - 1] < max_rank {
                let k = *[1i64, 2, 3, -2, 4, 6].choose(rng).unwrap();
                arrows.push((n, ranks[n], ranks[n - 1], k));
                ranks[n] += 1;
                ranks[n - 1] += 1;
            }
        } else if ranks[n] < max_rank {
            ranks[n] += 1;
        }
    }
    let scramble: Vec<(IntMatrix, IntMatrix)> = ranks.iter().map(|&r| unimodular(rng, r, 2 * r)).collect();
    let diffs = (1..=trunc)
        .map(|n| {
            let d = IntMatrix::from_triplets(
                ranks[n - 1],
                ranks[n],
                arrows.iter().filter(|a| a.0 == n).map(|&(_, col, row, k)| (row, col, k)),
            );
            scramble[n - 1].0.mul(&d).mul(&scramble[n].1)
        })
        .collect();
    ChainComplex::new(ranks, diffs).expect("a direct sum of two-term complexes")
}

/// `Γ(c)` for a random `c`, with each `X_n` in a scrambled basis.
pub fn simplicial_group<R: Rng>(rng: &mut R, trunc: usize, max_rank: usize) -> TruncSimpAb {
    let x = gamma(&chain_complex(rng, trunc, max_rank));
    let (p, p_inv): (Vec<_>, Vec<_>) = x.ranks().iter().map(|&r| unimodular(rng, r, r)).unzip();
    x.conjugate(&p, &p_inv)
}

/// A quotient of a coproduct of up to `max_generators` representables by a
/// random congruence (identifications closed under every action).
pub fn set_presheaf<R: Rng>(rng: &mut R, base: &Arc<FinCat>, max_generators: usize) -> SetPresheaf {
    let count = rng.gen_range(1..=max_generators.max(1));
    let mut x = SetPresheaf::representable(base.clone(), rng.gen_range(0..base.object_count()));
    for _ in 1..count {
        let r = SetPresheaf::representable(base.clone(), rng.gen_range(0..base.object_count()));
        x = x.coproduct(&r).expect("same base");
    }
    let glue = rng.gen_range(0..=2);
    quotient(rng, &x, glue)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn quotient<R: Rng>(rng: &mut R, x: &SetPresheaf, glue: usize) -> SetPresheaf {
    let c = x.base();
    let n = c.object_count();
    let start: Vec<usize> = {
        let mut s = vec![0; n + 1];
        for a in 0..n {
            s[a + 1] = s[a] + x.size(a);
        }
        s
    };
    let mut parent: Vec<usize> = (0..start[n]).collect();
    for _ in 0..glue {
        let a = rng.gen_range(0..n);
        if x.size(a) >= 2 {
            let (s, t) = (rng.gen_range(0..x.size(a)), rng.gen_range(0..x.size(a)));
            let (rs, rt) = (find(&mut parent, start[a] + s), find(&mut parent, start[a] + t));
            parent[rs] = rt;
        }
    }
    // s ~ t in X(b) forces X(f)s ~ X(f)t for every f : a → b
    loop {
        let mut changed = false;
        for f in 0..c.morphism_count() {
            let (a, b) = (c.src(f), c.tgt(f));
            for s in 0..x.size(b) {
                let t = find(&mut parent, start[b] + s) - start[b];
                let (rs, rt) = (find(&mut parent, start[a] + x.act(f, s)), find(&mut parent, start[a] + x.act(f, t)));
                if rs != rt {
                    parent[rs] = rt;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut class_of = vec![usize::MAX; start[n]];
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); n];
    for a in 0..n {
        for s in 0..x.size(a) {
            let root = find(&mut parent, start[a] + s);
            if class_of[root] == usize::MAX {
                class_of[root] = labels[a].len();
                labels[a].push(x.label(a, s).to_string());
            }
        }
    }
    let class = |parent: &mut [usize], a: usize, s: usize| class_of[find(parent, start[a] + s)];
    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        let mut seen = vec![false; labels[a].len()];
        for s in 0..x.size(a) {
            let k = class(&mut parent, a, s);
            if !std::mem::replace(&mut seen[k], true) {
                reps[a].push(s);
            }
        }
    }
    let actions = (0..c.morphism_count())
        .map(|f| reps[c.tgt(f)].iter().map(|&s| class(&mut parent, c.src(f), x.act(f, s))).collect())
        .collect();
    SetPresheaf::new(c.clone(), labels, actions).expect("a congruence has a quotient presheaf")
}

/// [`whitehead`] of a random set presheaf, in a scrambled basis at every object.
pub fn free_presheaf<R: Rng>(rng: &mut R, base: &Arc<FinCat>, max_generators: usize) -> AbPresheaf {
    let x = whitehead(&set_presheaf(rng, base, max_generators));
    let (p, p_inv): (Vec<_>, Vec<_>) = x.ranks().iter().map(|&r| unimodular(rng, r, r)).unzip();
    x.conjugate(&p, &p_inv).expect("conjugating by invertible matrices")
}

/// The map `ℤ^(a) → Y` sending `1_a` to `y ∈ Y(a)`: at `c`, a basis
/// element `h : c → a` goes to `Y(h)y`.
pub fn yoneda_map(y: &AbPresheaf, a: usize, element: &[i64]) -> AbPresheafMap {
    let c = y.base();
    let rep = whitehead(&SetPresheaf::representable(c.clone(), a));
    let v = IntMatrix::from_triplets(y.rank(a), 1, element.iter().enumerate().map(|(i, &k)| (i, 0, k)));
    let components = (0..c.object_count())
        .map(|o| {
            let columns = c.hom(o, a).iter().map(|&h| y.action(h).mul(&v).column(0).to_vec()).collect();
            IntMatrix::from_columns(y.rank(o), columns)
        })
        .collect();
    AbPresheafMap::new(rep, y.clone(), components).expect("Yoneda maps are natural")
}

/// A random element of `Y(a)` with small entries.
pub fn element<R: Rng>(rng: &mut R, y: &AbPresheaf, a: usize) -> Vec<i64> {
    (0..y.rank(a)).map(|_| rng.gen_range(-2..=2)).collect()
}
