use std::collections::BTreeMap;

use super::LinalgError;
use crate::scalar::Scalar;

/// Sparse integer matrix stored as an ordered map of nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), T::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed and zero results dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::IndexOutOfBounds { row: r, col: c, rows, cols });
            }
            m.add_at(r, c, v);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.add_at(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(T::zero)
    }

    /// Adds `v` to the entry at `(row, col)`.
    pub fn add_at(&mut self, row: usize, col: usize, v: T) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        let key = (row, col);
        let sum = match self.entries.remove(&key) {
            Some(old) => old + v,
            None => v,
        };
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn triplets(&self) -> Vec<(usize, usize, T)> {
        self.iter().map(|(r, c, v)| (r, c, v.clone())).collect()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &T)>> = BTreeMap::new();
        for (&(r, c), v) in &rhs.entries {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rhs_rows.get(&k) {
                for &(j, b) in row {
                    out.add_at(i, j, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Applies `f` to every row and column index, producing a matrix of the
    /// given shape. Used to permute or embed matrices.
    pub fn reindex(
        &self,
        rows: usize,
        cols: usize,
        row_map: impl Fn(usize) -> usize,
        col_map: impl Fn(usize) -> usize,
    ) -> Self {
        let mut out = Self::zeros(rows, cols);
        for (&(r, c), v) in &self.entries {
            out.add_at(row_map(r), col_map(c), v.clone());
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &Self) -> Self {
        let mut out = self.reindex(self.rows + other.rows, self.cols + other.cols, |r| r, |c| c);
        for (&(r, c), v) in &other.entries {
            out.add_at(r + self.rows, c + self.cols, v.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = SparseMatrix::<i64>::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 3)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 3);
        assert!(SparseMatrix::<i64>::from_triplets(1, 1, [(1, 0, 1)]).is_err());
    }

    #[test]
    fn multiply_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![1i64, 2], vec![0, 1]]);
        let b = SparseMatrix::from_dense(&[vec![1i64], vec![-1]]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.to_dense(), vec![vec![-1], vec![-1]]);
        assert_eq!(a.transpose().get(1, 0), 2);
        assert!(b.mul(&b).is_err());
    }
}
