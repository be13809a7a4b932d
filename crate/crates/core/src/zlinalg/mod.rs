//! Exact integer linear algebra: matrices, normal forms, chain complexes and
//! their homology.

mod complex;
mod group;
mod matrix;
mod smith;
pub(crate) mod sparse;

pub use complex::{ChainComplex, ChainMap, HomologyPresentation, InducedMap};
pub use group::FgAbGroup;
pub use matrix::IntMatrix;
pub use smith::{
    column_hermite, invariant_factors, kernel_basis, left_inverse, rank, smith_normal_form, solve, SmithForm,
};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("d_{degree} · d_{} is nonzero", degree + 1)]
    NotAComplex { degree: usize },
    #[error("naturality fails in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("degree {degree} is outside the certified range 0..{trunc}")]
    DegreeOutOfCertifiedRange { degree: usize, trunc: usize },
    #[error("torsion coefficients {0:?} are not an invariant-factor chain")]
    InvalidTorsion(Vec<BigInt>),
}

/// Homology of `c` in degree `n`.
pub fn homology(c: &ChainComplex, n: usize) -> Result<FgAbGroup, LinalgError> {
    c.homology(n)
}

/// Per-degree isomorphism flags for `H_n(f)`, `0 ≤ n ≤ upto`.
pub fn is_homology_iso(f: &ChainMap, upto: usize) -> Result<Vec<bool>, LinalgError> {
    f.is_homology_iso(upto)
}
