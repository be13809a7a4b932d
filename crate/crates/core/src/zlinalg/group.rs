use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::smith::invariant_factors;
use super::{IntMatrix, LinalgError};

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` with
/// `2 ≤ d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, LinalgError> {
        let two = BigInt::from(2);
        if torsion.iter().any(|d| d < &two) {
            return Err(LinalgError::InvalidTorsion(torsion));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(LinalgError::InvalidTorsion(torsion));
        }
        Ok(FgAbGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    /// `ℤ/n`; `n = 0` gives ℤ and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => FgAbGroup::free(1),
            1 => FgAbGroup::trivial(),
            n => FgAbGroup { rank: 0, torsion: vec![BigInt::from(n)] },
        }
    }

    /// The cokernel of `m : ℤ^cols → ℤ^rows`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let factors = invariant_factors(m);
        Self::from_factors(m.rows(), &factors)
    }

    /// Group presented by `generators` generators and relations with the given
    /// nonzero invariant factors.
    pub fn from_factors(generators: usize, factors: &[BigInt]) -> Self {
        let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
        FgAbGroup { rank: generators - factors.len(), torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Direct sum, renormalized into invariant-factor form.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let n = self.torsion.len() + other.torsion.len();
        let diag = IntMatrix::from_triplets(
            n,
            n,
            self.torsion.iter().chain(&other.torsion).enumerate().map(|(i, d)| (i, i, d.clone())),
        );
        let t = FgAbGroup::cokernel(&diag);
        FgAbGroup { rank: self.rank + other.rank, torsion: t.torsion }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("ℤ/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_chain_enforced() {
        assert!(FgAbGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FgAbGroup::new(0, vec![BigInt::from(1)]).is_err());
        assert!(FgAbGroup::new(1, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
    }

    #[test]
    fn direct_sum_normalizes() {
        let g = FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::cyclic(3));
        assert_eq!(g, FgAbGroup::cyclic(6));
        assert_eq!(g.to_string(), "ℤ/6");
        assert_eq!(FgAbGroup::free(2).direct_sum(&FgAbGroup::cyclic(4)).to_string(), "ℤ^2 ⊕ ℤ/4");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn cokernel_of_multiplication() {
        assert_eq!(FgAbGroup::cokernel(&IntMatrix::from_rows(&[[2]])), FgAbGroup::cyclic(2));
        assert_eq!(FgAbGroup::cokernel(&IntMatrix::zeros(2, 0)), FgAbGroup::free(2));
    }
}
