use super::SimplicialError;
use crate::fincat::{DeltaTrunc, MonotoneMap};
use crate::presheaf::AbPresheaf;
use crate::zlinalg::{kernel_basis, left_inverse, rank, ChainComplex, ChainMap, IntMatrix};

/// A simplicial abelian group truncated at degree `trunc`, with free values.
///
/// `faces[n][i] : X_n → X_{n−1}` for `1 ≤ n ≤ trunc`, and
/// `degens[n][j] : X_n → X_{n+1}` for `n < trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSimpAb {
    ranks: Vec<usize>,
    faces: Vec<Vec<IntMatrix>>,
    degens: Vec<Vec<IntMatrix>>,
}

/// A violated simplicial identity, with the degree it starts from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicialIdentity {
    FaceFace { n: usize, i: usize, j: usize },
    DegenDegen { n: usize, i: usize, j: usize },
    FaceDegen { n: usize, i: usize, j: usize },
}

impl TruncSimpAb {
    pub fn new(
        ranks: Vec<usize>,
        faces: Vec<Vec<IntMatrix>>,
        degens: Vec<Vec<IntMatrix>>,
    ) -> Result<Self, SimplicialError> {
        let x = Self::unchecked(ranks, faces, degens)?;
        match x.validate().into_iter().next() {
            None => Ok(x),
            Some(v) => Err(SimplicialError::Identity(v)),
        }
    }

    /// Checks shapes only. `faces[0]` and `degens[trunc]` must be empty.
    pub fn unchecked(
        ranks: Vec<usize>,
        faces: Vec<Vec<IntMatrix>>,
        degens: Vec<Vec<IntMatrix>>,
    ) -> Result<Self, SimplicialError> {
        let t = ranks.len().checked_sub(1).ok_or_else(|| SimplicialError::Shape("no degrees".into()))?;
        if faces.len() != t + 1 || degens.len() != t + 1 {
            return Err(SimplicialError::Shape("faces and degeneracies must be listed for every degree".into()));
        }
        for n in 0..=t {
            let nf = if n == 0 { 0 } else { n + 1 };
            let nd = if n == t { 0 } else { n + 1 };
            if faces[n].len() != nf || degens[n].len() != nd {
                return Err(SimplicialError::Shape(format!("wrong number of structure maps in degree {n}")));
            }
            if faces[n].iter().any(|d| d.shape() != (ranks[n - 1], ranks[n]))
                || degens[n].iter().any(|s| s.shape() != (ranks[n + 1], ranks[n]))
            {
                return Err(SimplicialError::Shape(format!("structure map of the wrong shape in degree {n}")));
            }
        }
        Ok(TruncSimpAb { ranks, faces, degens })
    }

    /// All simplicial identities between degrees `≤ trunc`.
    pub fn validate(&self) -> Vec<SimplicialIdentity> {
        let t = self.trunc();
        let mut out = Vec::new();
        for n in 2..=t {
            for j in 1..=n {
                for i in 0..j {
                    if self.d(n - 1, i).mul(self.d(n, j)) != self.d(n - 1, j - 1).mul(self.d(n, i)) {
                        out.push(SimplicialIdentity::FaceFace { n, i, j });
                    }
                }
            }
        }
        for n in 0..t.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if self.s(n + 1, i).mul(self.s(n, j)) != self.s(n + 1, j + 1).mul(self.s(n, i)) {
                        out.push(SimplicialIdentity::DegenDegen { n, i, j });
                    }
                }
            }
        }
        for n in 0..t {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.d(n + 1, i).mul(self.s(n, j));
                    let rhs = if i < j {
                        self.s(n - 1, j - 1).mul(self.d(n, i))
                    } else if i == j || i == j + 1 {
                        IntMatrix::identity(self.ranks[n])
                    } else {
                        self.s(n - 1, j).mul(self.d(n, i - 1))
                    };
                    if lhs != rhs {
                        out.push(SimplicialIdentity::FaceDegen { n, i, j });
                    }
                }
            }
        }
        out
    }

    pub fn trunc(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_i : X_n → X_{n−1}`.
    pub fn d(&self, n: usize, i: usize) -> &IntMatrix {
        &self.faces[n][i]
    }

    /// `s_j : X_n → X_{n+1}`.
    pub fn s(&self, n: usize, j: usize) -> &IntMatrix {
        &self.degens[n][j]
    }

    /// The constant simplicial group on `ℤ^r`.
    pub fn constant(r: usize, trunc: usize) -> Self {
        let faces =
            (0..=trunc).map(|n| if n == 0 { Vec::new() } else { vec![IntMatrix::identity(r); n + 1] }).collect();
        let degens =
            (0..=trunc).map(|n| if n == trunc { Vec::new() } else { vec![IntMatrix::identity(r); n + 1] }).collect();
        TruncSimpAb { ranks: vec![r; trunc + 1], faces, degens }
    }

    /// Simultaneous change of basis `X'_n = p_n X_n`.
    pub fn conjugate(&self, p: &[IntMatrix], p_inv: &[IntMatrix]) -> Self {
        let t = self.trunc();
        let faces = (0..=t).map(|n| self.faces[n].iter().map(|d| p[n - 1].mul(d).mul(&p_inv[n])).collect()).collect();
        let degens = (0..=t).map(|n| self.degens[n].iter().map(|s| p[n + 1].mul(s).mul(&p_inv[n])).collect()).collect();
        TruncSimpAb { ranks: self.ranks.clone(), faces, degens }
    }

    /// `X(θ) : X_n → X_m` for a monotone `θ : [m] → [n]`, by factoring `θ`
    /// into cofaces and codegeneracies.
    pub fn operator(&self, theta: &MonotoneMap) -> IntMatrix {
        let (m, n) = (theta.src, theta.tgt);
        let v = &theta.values;
        if let Some(j) = (0..m).find(|&j| v[j] == v[j + 1]) {
            // θ = θ' σ_j, so X(θ) = s_j X(θ')
            let mut rest = v.clone();
            rest.remove(j + 1);
            return self.s(m - 1, j).mul(&self.operator(&MonotoneMap::new(n, rest)));
        }
        if m == n {
            return IntMatrix::identity(self.ranks[n]);
        }
        // θ = δ_i θ'', so X(θ) = X(θ'') d_i
        let i = (0..=n).find(|k| !v.contains(k)).expect("injective non-identity map misses a value");
        let rest = v.iter().map(|&k| if k > i { k - 1 } else { k }).collect();
        self.operator(&MonotoneMap::new(n - 1, rest)).mul(self.d(n, i))
    }

    /// The presheaf on `Δ_{≤trunc}` with `X(θ)` as computed by [`operator`](Self::operator).
    pub fn to_presheaf(&self, delta: &DeltaTrunc) -> AbPresheaf {
        assert_eq!(delta.bound(), self.trunc());
        let actions = (0..delta.cat().morphism_count()).map(|f| self.operator(delta.map(f))).collect();
        AbPresheaf::new(delta.cat().clone(), self.ranks.clone(), actions)
            .expect("simplicial identities give a presheaf")
    }

    /// Reads faces and degeneracies off a presheaf on `Δ_{≤k}`.
    pub fn from_presheaf(delta: &DeltaTrunc, x: &AbPresheaf) -> Result<Self, SimplicialError> {
        let t = delta.bound();
        let faces = (0..=t)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| x.action(delta.index_of(&MonotoneMap::coface(n, i))).clone()).collect()
                }
            })
            .collect();
        let degens = (0..=t)
            .map(|n| {
                if n == t {
                    Vec::new()
                } else {
                    (0..=n).map(|j| x.action(delta.index_of(&MonotoneMap::codegeneracy(n, j))).clone()).collect()
                }
            })
            .collect();
        Self::new(x.ranks().to_vec(), faces, degens)
    }

    /// Rank of the degenerate part `Σ_j im s_j ⊆ X_n`.
    pub fn degenerate_rank(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let blocks: Vec<&IntMatrix> = self.degens[n - 1].iter().collect();
        let stacked = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, s| acc.hstack(s));
        rank(&stacked)
    }
}

/// `X_0 ← X_1 ← …` with `d = Σ (−1)^i d_i`.
pub fn unnormalized_complex(x: &TruncSimpAb) -> ChainComplex {
    let diffs = (1..=x.trunc())
        .map(|n| {
            (0..=n).fold(IntMatrix::zeros(x.ranks[n - 1], x.ranks[n]), |acc, i| {
                if i % 2 == 0 {
                    acc.add(x.d(n, i))
                } else {
                    acc.sub(x.d(n, i))
                }
            })
        })
        .collect();
    ChainComplex::new(x.ranks.clone(), diffs).expect("alternating face sum squares to zero")
}

/// The Moore complex together with its inclusion into the unnormalized one.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    pub complex: ChainComplex,
    /// Columns span `⋂_{i>0} ker d_i` in degree `n`.
    pub bases: Vec<IntMatrix>,
    pub inclusion: ChainMap,
}

pub fn moore_normalized(x: &TruncSimpAb) -> MooreComplex {
    let t = x.trunc();
    let bases: Vec<IntMatrix> = (0..=t)
        .map(|n| {
            if n == 0 {
                IntMatrix::identity(x.ranks[0])
            } else {
                let stacked = IntMatrix::vstack_all(x.ranks[n], &x.faces[n][1..]);
                kernel_basis(&stacked)
            }
        })
        .collect();
    let diffs = (1..=t)
        .map(|n| {
            let image = x.d(n, 0).mul(&bases[n]);
            let inv = left_inverse(&bases[n - 1]).expect("kernel bases are saturated");
            let d = inv.mul(&image);
            assert_eq!(bases[n - 1].mul(&d), image, "d_0 maps the Moore complex into itself");
            d
        })
        .collect();
    let complex = ChainComplex::new(bases.iter().map(IntMatrix::cols).collect(), diffs).expect("restriction of d_0");
    let inclusion =
        ChainMap::new(complex.clone(), unnormalized_complex(x), bases.clone()).expect("Moore inclusion is a chain map");
    MooreComplex { complex, bases, inclusion }
}
