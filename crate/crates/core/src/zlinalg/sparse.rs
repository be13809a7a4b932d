//! Sparse elimination of unit pivots.
//!
//! Boundary matrices of nerves and simplicial replacements are dominated by
//! ±1 entries. Eliminating a unit pivot replaces the matrix by its Schur
//! complement, which has the same invariant factors minus one leading 1.
//! Entries are machine integers with checked arithmetic. A pivot whose
//! elimination would overflow is left in place for the dense big-integer
//! path; so is a matrix with an entry that does not fit.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::matrix::IntMatrix;

pub struct Reduced {
    /// Number of unit pivots eliminated.
    pub units: usize,
    /// The Schur complement on the surviving rows and columns, compacted.
    pub residue: IntMatrix,
}

type Column = Vec<(u32, i64)>;

/// `target -= factor * source`, both sorted by row. `None` on overflow.
fn axpy(target: &Column, source: &Column, factor: i64, fill: &mut Vec<u32>) -> Option<Column> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ti = target.get(i).map_or(u32::MAX, |e| e.0);
        let sj = source.get(j).map_or(u32::MAX, |e| e.0);
        if ti < sj {
            out.push(target[i]);
            i += 1;
        } else if sj < ti {
            let v = source[j].1.checked_mul(factor)?.checked_neg()?;
            out.push((sj, v));
            fill.push(sj);
            j += 1;
        } else {
            let v = target[i].1.checked_sub(source[j].1.checked_mul(factor)?)?;
            if v != 0 {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

pub fn eliminate_units(m: &IntMatrix) -> Option<Reduced> {
    let (rows, ncols) = m.shape();
    let mut cols: Vec<Column> = Vec::with_capacity(ncols);
    for col in m.columns() {
        let mut c = Vec::with_capacity(col.len());
        for (i, v) in col {
            c.push((*i as u32, v.to_i64()?));
        }
        cols.push(c);
    }
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for (i, _) in col {
            row_cols[*i as usize].push(j as u32);
        }
    }
    let mut col_alive = vec![true; ncols];
    let mut row_alive = vec![true; rows];
    let mut units = 0;

    let mut order: Vec<usize> = (0..ncols).collect();
    order.sort_by_key(|&j| cols[j].len());
    let mut staged: Vec<(usize, Column, std::ops::Range<usize>)> = Vec::new();
    let mut fill = Vec::new();
    loop {
        let mut progress = false;
        for &a in &order {
            if !col_alive[a] || cols[a].is_empty() {
                continue;
            }
            let pivot =
                cols[a].iter().filter(|(_, v)| v.abs() == 1).min_by_key(|(r, _)| row_cols[*r as usize].len()).copied();
            let Some((b, p)) = pivot else { continue };
            // stage every update first; a pivot whose updates overflow is skipped
            staged.clear();
            fill.clear();
            let mut overflow = false;
            for &c in &row_cols[b as usize] {
                let c = c as usize;
                if c == a || !col_alive[c] {
                    continue;
                }
                let Ok(k) = cols[c].binary_search_by_key(&b, |e| e.0) else { continue };
                let start = fill.len();
                match cols[c][k].1.checked_mul(p).and_then(|factor| axpy(&cols[c], &cols[a], factor, &mut fill)) {
                    Some(updated) => staged.push((c, updated, start..fill.len())),
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if overflow {
                continue;
            }
            row_cols[b as usize].clear();
            cols[a].clear();
            for (c, updated, range) in staged.drain(..) {
                cols[c] = updated;
                for &r in &fill[range] {
                    row_cols[r as usize].push(c as u32);
                }
            }
            col_alive[a] = false;
            row_alive[b as usize] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let live_rows: Vec<usize> = (0..rows).filter(|&r| row_alive[r]).collect();
    let mut position = vec![u32::MAX; rows];
    for (k, &r) in live_rows.iter().enumerate() {
        position[r] = k as u32;
    }
    let mut residue_cols = Vec::new();
    for (j, col) in cols.into_iter().enumerate() {
        if !col_alive[j] || col.is_empty() {
            continue;
        }
        let c: Vec<(usize, BigInt)> = col
            .into_iter()
            .filter(|(r, _)| position[*r as usize] != u32::MAX)
            .map(|(r, v)| (position[r as usize] as usize, BigInt::from(v)))
            .collect();
        if !c.is_empty() {
            residue_cols.push(c);
        }
    }
    // drop rows that no surviving column touches
    let mut used = vec![false; live_rows.len()];
    for c in &residue_cols {
        for (r, _) in c {
            used[*r] = true;
        }
    }
    let mut compact = vec![usize::MAX; live_rows.len()];
    let mut n = 0;
    for (r, &u) in used.iter().enumerate() {
        if u {
            compact[r] = n;
            n += 1;
        }
    }
    let residue_cols =
        residue_cols.into_iter().map(|c| c.into_iter().map(|(r, v)| (compact[r], v)).collect()).collect();
    Some(Reduced { units, residue: IntMatrix::from_columns(n, residue_cols) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_block_is_removed() {
        let m = IntMatrix::from_rows(&[[1, 2, 0], [0, 2, 0], [0, 0, 4]]);
        let r = eliminate_units(&m).unwrap();
        assert_eq!(r.units, 1);
        assert_eq!(r.residue.shape(), (2, 2));
    }

    #[test]
    fn overflow_falls_back() {
        let big = BigInt::from(i64::MAX) * 4;
        let m = IntMatrix::from_triplets(1, 1, [(0, 0, big)]);
        assert!(eliminate_units(&m).is_none());
    }
}
