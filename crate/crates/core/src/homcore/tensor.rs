use num_bigint::BigInt;

use super::HomError;
use crate::fincat::opposite;
use crate::presheaf::{offsets, AbPresheaf};
use crate::zlinalg::{FgAbGroup, IntMatrix};

/// `X ⊙_A Y` together with the matrix it is the cokernel of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorResult {
    pub group: FgAbGroup,
    pub presentation: IntMatrix,
}

fn check_bases(x: &AbPresheaf, y: &AbPresheaf) -> Result<(), HomError> {
    if opposite(x.base()) != **y.base() {
        return Err(HomError::BaseMismatch);
    }
    Ok(())
}

/// Generators `⊕_a X(a) ⊗ Y(a)`, with `ξ ⊗ η` at `off[a] + ξ·r^Y_a + η`.
pub(crate) fn tensor_offsets(x: &AbPresheaf, y: &AbPresheaf) -> Vec<usize> {
    let sizes: Vec<usize> = (0..x.base().object_count()).map(|a| x.rank(a) * y.rank(a)).collect();
    offsets(&sizes)
}

/// The coend relations: for each non-identity `f : a → a'` a block of
/// columns `X(a') ⊗ Y(a)`, mapped by `X(f) ⊗ 1` into `a` and by `−1 ⊗ Y(f)`
/// into `a'`.
pub fn tensor_presentation(x: &AbPresheaf, y: &AbPresheaf) -> Result<IntMatrix, HomError> {
    check_bases(x, y)?;
    let c = x.base();
    let off = tensor_offsets(x, y);
    let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::new();
    for f in 0..c.morphism_count() {
        if c.is_identity(f) {
            continue;
        }
        let (a, a2) = (c.src(f), c.tgt(f));
        let left = x.action(f).kron(&IntMatrix::identity(y.rank(a)));
        let right = IntMatrix::identity(x.rank(a2)).kron(y.action(f));
        for j in 0..left.cols() {
            let mut col: Vec<(usize, BigInt)> = left.column(j).iter().map(|(r, v)| (off[a] + r, v.clone())).collect();
            col.extend(right.column(j).iter().map(|(r, v)| (off[a2] + r, -v)));
            columns.push(col);
        }
    }
    Ok(IntMatrix::from_columns(off[c.object_count()], columns))
}

/// `X ⊙_A Y` for `X` on `A` and `Y` on `A^op`.
pub fn tensor(x: &AbPresheaf, y: &AbPresheaf) -> Result<TensorResult, HomError> {
    let presentation = tensor_presentation(x, y)?;
    Ok(TensorResult { group: FgAbGroup::cokernel(&presentation), presentation })
}

/// An isomorphism of presentations: `generators · r · relations = r'` with
/// both matrices invertible over ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationIso {
    pub generators: IntMatrix,
    pub relations: IntMatrix,
}

impl PresentationIso {
    pub fn verify(&self, r: &IntMatrix, r2: &IntMatrix) -> bool {
        self.generators.is_unimodular()
            && self.relations.is_unimodular()
            && self.generators.mul(r).mul(&self.relations) == *r2
    }
}

/// The swap `X ⊙ Y ≅ Y ⊙ X` on presentations: factors are exchanged in
/// each generator block and each relation block, and relations change sign.
pub fn tensor_symmetry(x: &AbPresheaf, y: &AbPresheaf) -> Result<PresentationIso, HomError> {
    check_bases(x, y)?;
    let c = x.base();
    let off = tensor_offsets(x, y);
    let mut gen = Vec::new();
    for a in 0..c.object_count() {
        let (rx, ry) = (x.rank(a), y.rank(a));
        for xi in 0..rx {
            for eta in 0..ry {
                // ξ ⊗ η in X ⊙ Y becomes η ⊗ ξ in Y ⊙ X
                gen.push((off[a] + eta * rx + xi, off[a] + xi * ry + eta, 1i64));
            }
        }
    }
    let total = off[c.object_count()];
    let mut rel = Vec::new();
    let mut at = 0;
    for f in 0..c.morphism_count() {
        if c.is_identity(f) {
            continue;
        }
        // block X(a') ⊗ Y(a) on one side, Y(a) ⊗ X(a') on the other
        let (rx, ry) = (x.rank(c.tgt(f)), y.rank(c.src(f)));
        for xi in 0..rx {
            for eta in 0..ry {
                rel.push((at + xi * ry + eta, at + eta * rx + xi, -1i64));
            }
        }
        at += rx * ry;
    }
    Ok(PresentationIso {
        generators: IntMatrix::from_triplets(total, total, gen),
        relations: IntMatrix::from_triplets(at, at, rel),
    })
}
