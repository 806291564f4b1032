//! Sparse matrices over an exact field.
//!
//! Rank is computed by fraction-free (Bareiss) elimination with
//! first-nonzero pivoting: columns are scanned left to right and the first
//! remaining row with an entry in the column becomes the pivot. Rows not
//! touched by a step are rescaled lazily, so sparse rows stay sparse.

use std::collections::BTreeMap;


use crate::scalar::Scalar;

type SparseRow<S> = Vec<(usize, S)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    // row-major, each row sorted by column, no explicit zeros
    data: Vec<SparseRow<S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Repeated (row, col) entries are summed.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, S)>>(
        rows: usize,
        cols: usize,
        entries: I,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, S>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            let slot = acc[r].entry(c).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self { rows, cols, data }
    }

    pub fn from_dense(dense: &[Vec<S>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows,
            cols,
            dense.iter().enumerate().flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.data[r]
            .binary_search_by_key(&c, |(col, _)| *col)
            .map(|i| self.data[r][i].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    pub fn row(&self, r: usize) -> &[(usize, S)] {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> Vec<(usize, S)> {
        (0..self.rows)
            .filter_map(|r| {
                let v = self.get(r, c);
                (!v.is_zero()).then_some((r, v))
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.data
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone()))),
        )
    }

    /// `self · rhs`. Panics on a dimension mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut entries = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &rhs.data[*k] {
                    entries.push((r, *c, a.clone() * b.clone()));
                }
            }
        }
        Self::from_triplets(self.rows, rhs.cols, entries)
    }

    /// Rank by sparse Bareiss elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<SparseRow<S>> = self.data.clone();
        // step at which each row was last brought up to date
        let mut stamp = vec![0usize; rows.len()];
        let mut pivots: Vec<S> = vec![S::one()];
        let mut remaining: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();

        for col in 0..self.cols {
            let Some(pos) = remaining
                .iter()
                .position(|&r| rows[r].first().map(|e| e.0) == Some(col))
            else {
                continue;
            };
            let pivot_row = remaining.remove(pos);
            let done = pivots.len() - 1;
            catch_up(&mut rows[pivot_row], &pivots, stamp[pivot_row], done);
            stamp[pivot_row] = done;
            let pivot = rows[pivot_row][0].1.clone();
            let prev = pivots[done].clone();
            let pivot_entries = rows[pivot_row].clone();

            for &r in &remaining {
                if rows[r].first().map(|e| e.0) != Some(col) {
                    continue;
                }
                catch_up(&mut rows[r], &pivots, stamp[r], done);
                let lead = rows[r][0].1.clone();
                rows[r] = bareiss_update(&rows[r], &pivot_entries, &pivot, &lead, &prev);
                stamp[r] = done + 1;
            }
            pivots.push(pivot);
            remaining.retain(|&r| !rows[r].is_empty());
        }
        pivots.len() - 1
    }

    /// Reduced row echelon form by Gauss–Jordan elimination over the field.
    /// Returns the reduced rows and the pivot column of each.
    pub fn rref(&self) -> (Vec<Vec<S>>, Vec<usize>) {
        let mut m = self.to_dense();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = S::one() / m[r][c].clone();
            for v in m[r].iter_mut() {
                *v = v.clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..self.cols {
                        let delta = f.clone() * m[r][j].clone();
                        m[i][j] = m[i][j].clone() - delta;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        m.truncate(r);
        (m, pivot_cols)
    }

    /// A basis of the right kernel `{v : self · v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let (reduced, pivot_cols) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (row, &pc) in reduced.iter().zip(&pivot_cols) {
                    v[pc] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

fn catch_up<S: Scalar>(row: &mut SparseRow<S>, pivots: &[S], from: usize, to: usize) {
    if from == to {
        return;
    }
    let factor = pivots[to].clone() / pivots[from].clone();
    for (_, v) in row.iter_mut() {
        *v = v.clone() * factor.clone();
    }
}

/// `(pivot · row − lead · pivot_row) / prev`, dropping the eliminated column.
fn bareiss_update<S: Scalar>(
    row: &[(usize, S)],
    pivot_row: &[(usize, S)],
    pivot: &S,
    lead: &S,
    prev: &S,
) -> SparseRow<S> {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (1, 1);
    loop {
        let (col, value) = match (row.get(i), pivot_row.get(j)) {
            (Some((ca, a)), Some((cb, b))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, pivot.clone() * a.clone() - lead.clone() * b.clone())
            }
            (Some((ca, a)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, pivot.clone() * a.clone())
            }
            (Some(_), Some((cb, b))) | (None, Some((cb, b))) => {
                j += 1;
                (*cb, -(lead.clone() * b.clone()))
            }
            (Some((ca, a)), None) => {
                i += 1;
                (*ca, pivot.clone() * a.clone())
            }
            (None, None) => break,
        };
        if !value.is_zero() {
            out.push((col, value / prev.clone()));
        }
    }
    out
}

/// Row-reduced spanning set that accepts vectors one at a time and reports
/// whether each one enlarged the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S> {
    dim: usize,
    // (pivot column, row normalized to 1 at its pivot)
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and keeps the remainder if nonzero.
    pub fn insert(&mut self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = S::one() / v[pc].clone();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rows.push((pc, v));
        true
    }
}
