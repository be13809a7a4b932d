//! Homology of presheaves on finite categories, computed exactly over ℤ.

pub mod fincat;
pub mod homcore;
pub mod presheaf;
pub mod random;
pub mod simplicial;
pub mod theta;
pub mod zlinalg;
