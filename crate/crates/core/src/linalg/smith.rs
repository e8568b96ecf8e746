use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use super::group::AbelianGroup;
use super::sparse::SparseMatrix;
use crate::scalar::{magnitude, Scalar};

/// Invariant factors `d1 | d2 | … | dr` of an integer matrix, `r` its rank.
pub fn smith_invariants<T: Scalar>(m: &SparseMatrix<T>) -> Vec<BigUint> {
    let diagonal = Eliminator::new(m).run();
    let rank = diagonal.len();
    let group = AbelianGroup::from_orders(0, diagonal);
    let units = rank - group.torsion().len();
    std::iter::repeat(BigUint::one())
        .take(units)
        .chain(group.torsion().iter().cloned())
        .collect()
}

/// Rank over the rationals.
pub fn rank<T: Scalar>(m: &SparseMatrix<T>) -> usize {
    Eliminator::new(m).run().len()
}

/// Cokernel `Z^rows / im(m)` as an abelian group.
pub fn cokernel<T: Scalar>(m: &SparseMatrix<T>) -> AbelianGroup {
    let d = Eliminator::new(m).run();
    AbelianGroup::from_orders(m.rows() - d.len(), d)
}

/// Row-major working copy with a column index, reduced to a diagonal by
/// unimodular row and column operations.
struct Eliminator<T: Scalar> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
    live_rows: BTreeSet<usize>,
}

impl<T: Scalar> Eliminator<T> {
    fn new(m: &SparseMatrix<T>) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows()];
        let mut cols = vec![BTreeSet::new(); m.cols()];
        for (r, c, v) in m.iter() {
            rows[r].insert(c, v.clone());
            cols[c].insert(r);
        }
        let live_rows = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
        Self { rows, cols, live_rows }
    }

    /// Returns the absolute values of the diagonal entries (not yet in
    /// divisibility form).
    fn run(mut self) -> Vec<BigUint> {
        let mut diagonal = Vec::new();
        while let Some((r, c)) = self.choose_pivot() {
            diagonal.push(self.reduce_at(r, c));
        }
        diagonal
    }

    /// Unit entries first, preferring small Markowitz cost; otherwise the
    /// entry of least absolute value.
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best_unit: Option<(usize, usize, usize)> = None;
        let mut best_other: Option<(BigUint, usize, usize, usize)> = None;
        for &r in &self.live_rows {
            let row = &self.rows[r];
            let row_cost = row.len() - 1;
            for (&c, v) in row {
                let cost = row_cost * (self.cols[c].len() - 1);
                if v.is_unit() {
                    if best_unit.map_or(true, |(b, _, _)| cost < b) {
                        best_unit = Some((cost, r, c));
                        if cost == 0 {
                            return Some((r, c));
                        }
                    }
                } else if best_unit.is_none() {
                    let mag = magnitude(v);
                    let better = match &best_other {
                        None => true,
                        Some((m, b, _, _)) => mag < *m || (mag == *m && cost < *b),
                    };
                    if better {
                        best_other = Some((mag, cost, r, c));
                    }
                }
            }
        }
        best_unit
            .map(|(_, r, c)| (r, c))
            .or(best_other.map(|(_, _, r, c)| (r, c)))
    }

    /// Clears row `r` and column `c` around the pivot, returning the final
    /// diagonal entry contributed by this step.
    fn reduce_at(&mut self, mut r: usize, mut c: usize) -> BigUint {
        loop {
            let p = self.rows[r][&c].clone();
            let mut restart: Option<(usize, usize)> = None;

            // Column: subtract multiples of row r from the other rows.
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let a = self.rows[i][&c].clone();
                let q = a.div_floor(&p);
                self.row_axpy(i, r, &q);
                if let Some(rem) = self.rows[i].get(&c) {
                    if magnitude(rem) < magnitude(&p)
                        && restart.as_ref().map_or(true, |&(ri, rc)| {
                            magnitude(rem) < magnitude(&self.rows[ri][&rc])
                        })
                    {
                        restart = Some((i, c));
                    }
                }
            }
            if let Some(next) = restart {
                (r, c) = next;
                continue;
            }

            // Row: column c is now zero outside row r, so a column operation
            // only changes entries of row r.
            let others: Vec<(usize, T)> = self.rows[r]
                .iter()
                .filter(|(&j, _)| j != c)
                .map(|(&j, v)| (j, v.clone()))
                .collect();
            let mut smaller: Option<usize> = None;
            for (j, a) in others {
                let rem = a.mod_floor(&p);
                self.set(r, j, rem.clone());
                if !rem.is_zero()
                    && smaller.map_or(true, |s| magnitude(&rem) < magnitude(&self.rows[r][&s]))
                {
                    smaller = Some(j);
                }
            }
            if let Some(j) = smaller {
                c = j;
                continue;
            }

            self.set(r, c, T::zero());
            self.live_rows.remove(&r);
            return magnitude(&p);
        }
    }

    /// row_i -= q * row_src
    fn row_axpy(&mut self, i: usize, src: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        let src_row: Vec<(usize, T)> = self.rows[src].iter().map(|(&j, v)| (j, v.clone())).collect();
        for (j, v) in src_row {
            let old = self.rows[i].get(&j).cloned().unwrap_or_else(T::zero);
            self.set(i, j, old - q.clone() * v);
        }
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            if self.rows[i].remove(&j).is_some() {
                self.cols[j].remove(&i);
                if self.rows[i].is_empty() {
                    self.live_rows.remove(&i);
                }
            }
        } else {
            if self.rows[i].insert(j, v).is_none() {
                self.cols[j].insert(i);
            }
            self.live_rows.insert(i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn inv(rows: &[Vec<i64>]) -> Vec<u64> {
        let m = SparseMatrix::from_dense(rows);
        smith_invariants(&m).iter().map(|d| u64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(inv(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(inv(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(inv(&[vec![0; 5], vec![0; 5]]), Vec::<u64>::new());
        assert_eq!(inv(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(inv(&[vec![6, 10, 15]]), vec![1]);
    }

    #[test]
    fn cokernel_of_twice() {
        let m = SparseMatrix::from_dense(&[vec![BigInt::from(2)], vec![BigInt::from(0)]]);
        assert_eq!(cokernel(&m), AbelianGroup::new(1, [2]));
        assert_eq!(rank(&m), 1);
    }
}
