//! Smith and Hermite normal forms over ℤ.
//!
//! The dense routines here work on a row-major copy of the input. Pivots are
//! chosen as the entry of smallest absolute value, ties broken by the lowest
//! row-major index, so results are reproducible run to run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::sparse;

/// `u · m · v = s` with `u`, `v` unimodular and `s` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries of `s`, in order.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Dense {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl Dense {
    fn from(m: &IntMatrix) -> Self {
        let mut a = vec![BigInt::zero(); m.rows() * m.cols()];
        for (i, j, v) in m.entries() {
            a[i * m.cols() + j] = v.clone();
        }
        Dense { rows: m.rows(), cols: m.cols(), a }
    }

    fn identity(n: usize) -> Self {
        let mut a = vec![BigInt::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = BigInt::one();
        }
        Dense { rows: n, cols: n, a }
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            (0..self.rows).flat_map(|i| {
                (0..self.cols).filter_map(move |j| {
                    let v = self.at(i, j);
                    (!v.is_zero()).then(|| (i, j, v.clone()))
                })
            }),
        )
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + k);
        }
    }

    /// row_i += q · row_k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self.a[k * self.cols + j];
            if !t.is_zero() {
                let t = t * q;
                self.a[i * self.cols + j] += t;
            }
        }
    }

    /// col_j += q · col_k
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self.a[i * self.cols + k];
            if !t.is_zero() {
                let t = t * q;
                self.a[i * self.cols + j] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.a[i * self.cols + j]);
            self.a[i * self.cols + j] = -v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = std::mem::take(&mut self.a[i * self.cols + j]);
            self.a[i * self.cols + j] = -v;
        }
    }
}

/// Records the transforms alongside the elimination so `u m v = s` holds throughout.
struct Tracker {
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.u.swap_rows(i, k);
        self.u_inv.swap_cols(i, k);
    }
    fn swap_cols(&mut self, j: usize, k: usize) {
        self.v.swap_cols(j, k);
        self.v_inv.swap_rows(j, k);
    }
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        self.u.add_row(i, k, q);
        self.u_inv.add_col(k, i, &-q);
    }
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        self.v.add_col(j, k, q);
        self.v_inv.add_row(k, j, &-q);
    }
    fn negate_row(&mut self, i: usize) {
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

fn smith_core(m: &IntMatrix, mut track: Option<&mut Tracker>) -> (Dense, Vec<BigInt>) {
    let mut a = Dense::from(m);
    let (r, c) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        // smallest |entry| in the trailing block, lowest row-major index on ties
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = a.at(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < a.at(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(tr) = track.as_deref_mut() {
            tr.swap_rows(t, pi);
            tr.swap_cols(t, pj);
        }
        loop {
            let mut residue = false;
            for i in t + 1..r {
                if a.at(i, t).is_zero() {
                    continue;
                }
                let q = -(a.at(i, t).div_floor(a.at(t, t)));
                a.add_row(i, t, &q);
                if let Some(tr) = track.as_deref_mut() {
                    tr.add_row(i, t, &q);
                }
                residue |= !a.at(i, t).is_zero();
            }
            for j in t + 1..c {
                if a.at(t, j).is_zero() {
                    continue;
                }
                let q = -(a.at(t, j).div_floor(a.at(t, t)));
                a.add_col(j, t, &q);
                if let Some(tr) = track.as_deref_mut() {
                    tr.add_col(j, t, &q);
                }
                residue |= !a.at(t, j).is_zero();
            }
            if residue {
                // a remainder is smaller than the pivot: move the smallest one in
                let mut best = (t, t);
                for i in t + 1..r {
                    let v = a.at(i, t);
                    if !v.is_zero() && v.abs() < a.at(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let v = a.at(t, j);
                    if !v.is_zero() && v.abs() < a.at(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                if let Some(tr) = track.as_deref_mut() {
                    tr.swap_rows(t, best.0);
                    tr.swap_cols(t, best.1);
                }
                continue;
            }
            let p = a.at(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.at(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    if let Some(tr) = track.as_deref_mut() {
                        tr.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t);
            if let Some(tr) = track.as_deref_mut() {
                tr.negate_row(t);
            }
        }
        diag.push(a.at(t, t).clone());
        t += 1;
    }
    (a, diag)
}

/// Smith normal form with transforms and their inverses.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut tracker = Tracker {
        u: Dense::identity(m.rows()),
        u_inv: Dense::identity(m.rows()),
        v: Dense::identity(m.cols()),
        v_inv: Dense::identity(m.cols()),
    };
    let (s, diagonal) = smith_core(m, Some(&mut tracker));
    SmithForm {
        u: tracker.u.to_matrix(),
        s: s.to_matrix(),
        v: tracker.v.to_matrix(),
        u_inv: tracker.u_inv.to_matrix(),
        v_inv: tracker.v_inv.to_matrix(),
        diagonal,
    }
}

/// Nonzero invariant factors of `m` (a divisibility chain, all positive).
///
/// Unit pivots are eliminated sparsely first; only the residue goes through
/// the dense algorithm. Elimination fills columns, so a matrix much wider
/// than it is tall is transposed first.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let transposed;
    let narrow = if m.cols() > 16 * m.rows() {
        transposed = m.transpose();
        &transposed
    } else {
        m
    };
    if let Some(reduced) = sparse::eliminate_units(narrow) {
        let (_, mut rest) = smith_core(&reduced.residue, None);
        let mut out = vec![BigInt::one(); reduced.units];
        out.append(&mut rest);
        return out;
    }
    smith_core(m, None).1
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Column Hermite normal form of a full-column-rank or arbitrary matrix `b`:
/// returns `h = b · w` with `w` unimodular, `h` lower echelon with positive
/// pivots, entries left of each pivot reduced into `[0, pivot)`, and zero
/// columns dropped. The column span is unchanged.
pub fn column_hermite(b: &IntMatrix) -> IntMatrix {
    let mut a = Dense::from(&b.transpose());
    // row-style HNF on the transpose
    let (rows, cols) = (a.rows, a.cols);
    let mut lead = 0;
    let mut pivots = Vec::new();
    for j in 0..cols {
        if lead == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in lead..rows {
                let v = a.at(i, j);
                if !v.is_zero() && best.is_none_or(|b| v.abs() < a.at(b, j).abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            a.swap_rows(lead, p);
            let mut done = true;
            for i in lead + 1..rows {
                if a.at(i, j).is_zero() {
                    continue;
                }
                let q = -(a.at(i, j).div_floor(a.at(lead, j)));
                a.add_row(i, lead, &q);
                done &= a.at(i, j).is_zero();
            }
            if done {
                if a.at(lead, j).is_negative() {
                    a.negate_row(lead);
                }
                let p = a.at(lead, j).clone();
                for i in 0..lead {
                    let q = -(a.at(i, j).div_floor(&p));
                    a.add_row(i, lead, &q);
                }
                pivots.push(j);
                lead += 1;
                break;
            }
        }
    }
    let h = a.to_matrix().transpose();
    h.column_range(0..lead)
}

/// Basis of the integer kernel of `m` (columns), in column Hermite form.
///
/// Integer kernels are saturated sublattices, so this basis extends to a basis of ℤⁿ.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let k = snf.v.column_range(snf.rank()..m.cols());
    column_hermite(&k)
}

/// For a basis `b` (columns) of a saturated sublattice, an integer matrix `l`
/// with `l · b = I`. Returns `None` if the span is not saturated or the
/// columns are dependent.
pub fn left_inverse(b: &IntMatrix) -> Option<IntMatrix> {
    let k = b.cols();
    let snf = smith_normal_form(b);
    if snf.rank() != k || snf.diagonal.iter().any(|d| !d.is_one()) {
        return None;
    }
    // u b v = [I; 0]  ⇒  (v [I 0] u) b = I
    let top = snf.u.row_range(0..k);
    Some(snf.v.mul(&top))
}

/// Solves `m x = y` over ℤ for each column of `y`, if solvable.
pub fn solve(m: &IntMatrix, y: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.rows(), y.rows());
    let snf = smith_normal_form(m);
    let r = snf.rank();
    // s (v_inv x) = u y
    let uy = snf.u.mul(y);
    let mut cols = Vec::with_capacity(y.cols());
    for j in 0..y.cols() {
        let mut z: Vec<(usize, BigInt)> = Vec::new();
        for (i, v) in uy.column(j) {
            if *i >= r {
                return None;
            }
            let (q, rem) = v.div_rem(&snf.diagonal[*i]);
            if !rem.is_zero() {
                return None;
            }
            z.push((*i, q));
        }
        cols.push(z);
    }
    let z = IntMatrix::from_columns(m.cols(), cols);
    Some(snf.v.mul(&z))
}
