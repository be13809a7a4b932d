use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A matrix over ℤ with arbitrary-precision entries.
///
/// Storage is column-major and sparse: every column keeps its nonzero
/// entries sorted by row. Two matrices are equal iff they have the same
/// shape and the same entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        IntMatrix { rows: n, cols: n, columns }
    }

    /// Builds a matrix from small integer rows. Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut columns = vec![Vec::new(); c];
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged rows in IntMatrix::from_rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    columns[j].push((i, BigInt::from(v)));
                }
            }
        }
        IntMatrix { rows: r, cols: c, columns }
    }

    /// Builds a matrix from big-integer rows; a shape is needed because
    /// `rows` may be empty while `cols` is not.
    pub fn from_big_rows(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        assert_eq!(data.len(), rows);
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        IntMatrix { rows, cols, columns }
    }

    /// Builds a matrix from `(row, col, value)` triples. Repeated positions are summed.
    pub fn from_triplets<I, V>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, V)>,
        V: Into<BigInt>,
    {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            columns[c].push((r, v.into()));
        }
        for col in &mut columns {
            normalize_column(col);
        }
        IntMatrix { rows, cols, columns }
    }

    /// Builds a matrix from sparse columns. Entries need not be sorted.
    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        for col in &mut columns {
            assert!(col.iter().all(|(r, _)| *r < rows));
            normalize_column(col);
        }
        IntMatrix { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        assert!(r < self.rows && c < self.cols);
        match self.columns[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Iterates over the nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.columns.iter().enumerate().all(|(j, col)| col.len() == 1 && col[0].0 == j && col[0].1.is_one())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (i, j, v) in self.entries() {
            columns[i].push((j, v.clone()));
        }
        IntMatrix { rows: self.cols, cols: self.rows, columns }
    }

    /// Matrix product `self · other`. Panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let columns = other
            .columns
            .iter()
            .map(|ocol| {
                let mut acc: Vec<(usize, BigInt)> = Vec::new();
                for (k, w) in ocol {
                    for (i, v) in &self.columns[*k] {
                        acc.push((*i, v * w));
                    }
                }
                normalize_column(&mut acc);
                acc
            })
            .collect();
        IntMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape());
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut acc: Vec<(usize, BigInt)> = a.iter().chain(b).cloned().collect();
                normalize_column(&mut acc);
                acc
            })
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        if k.is_zero() {
            return IntMatrix::zeros(self.rows, self.cols);
        }
        let columns = self.columns.iter().map(|col| col.iter().map(|(i, v)| (*i, v * k)).collect()).collect();
        IntMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// Kronecker product; the basis element `(i, j)` of the result is `i * other.rows + j`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut columns = vec![Vec::new(); cols];
        for (ja, acol) in self.columns.iter().enumerate() {
            for (jb, bcol) in other.columns.iter().enumerate() {
                let col = &mut columns[ja * other.cols + jb];
                for (ia, va) in acol {
                    for (ib, vb) in bcol {
                        col.push((ia * other.rows + ib, va * vb));
                    }
                }
                col.sort_by_key(|(i, _)| *i);
            }
        }
        IntMatrix { rows, cols, columns }
    }

    /// Places `[self | other]` side by side.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        IntMatrix { rows: self.rows, cols: self.cols + other.cols, columns }
    }

    /// Places `self` above `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut col = a.clone();
                col.extend(b.iter().map(|(i, v)| (i + self.rows, v.clone())));
                col
            })
            .collect();
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, columns }
    }

    /// Stacks many matrices vertically. `cols` fixes the width when the list is empty.
    pub fn vstack_all(cols: usize, blocks: &[IntMatrix]) -> IntMatrix {
        let mut out = IntMatrix::zeros(0, cols);
        for b in blocks {
            out = out.vstack(b);
        }
        out
    }

    pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut columns = Vec::new();
        let mut offset = 0;
        for b in blocks {
            for col in &b.columns {
                columns.push(col.iter().map(|(i, v)| (i + offset, v.clone())).collect());
            }
            offset += b.rows;
        }
        IntMatrix { rows, cols: columns.len(), columns }
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let columns = cols.iter().map(|&j| self.columns[j].clone()).collect();
        IntMatrix { rows: self.rows, cols: cols.len(), columns }
    }

    /// Selects the given rows, in order. Rows may not repeat.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut position = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            position[old] = new;
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let mut c: Vec<(usize, BigInt)> = col
                    .iter()
                    .filter(|(i, _)| position[*i] != usize::MAX)
                    .map(|(i, v)| (position[*i], v.clone()))
                    .collect();
                c.sort_by_key(|(i, _)| *i);
                c
            })
            .collect();
        IntMatrix { rows: rows.len(), cols: self.cols, columns }
    }

    pub fn column_range(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let cols: Vec<usize> = range.collect();
        self.select_columns(&cols)
    }

    pub fn row_range(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let rows: Vec<usize> = range.collect();
        self.select_rows(&rows)
    }

    /// Determinant by fraction-free Bareiss elimination. Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Square with every invariant factor 1. Sparse, unlike [`det`](Self::det).
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && {
            let factors = super::invariant_factors(self);
            factors.len() == self.rows && factors.iter().all(|d| d.is_one())
        }
    }

    /// Largest absolute entry, used for reporting coefficient growth.
    pub fn max_abs(&self) -> BigInt {
        self.entries().map(|(_, _, v)| v.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

fn normalize_column(col: &mut Vec<(usize, BigInt)>) {
    col.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
    for (i, v) in col.drain(..) {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    *col = out;
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            write!(f, "{self}")
        } else {
            write!(f, "({} nonzeros)", self.nnz())
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_dense().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
