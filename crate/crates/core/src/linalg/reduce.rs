//! Incremental sparse row reduction over the rationals.
//!
//! Rows are pushed one at a time and kept in fully reduced echelon form, so
//! every stored pivot row is free of all other pivot columns. The systems
//! produced by intertwiner problems are very sparse and highly redundant;
//! most pushed rows reduce to zero against a handful of short pivot rows.

use std::collections::BTreeMap;

use super::Scalar;

/// A sparse row: column index to nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone)]
pub struct RowReducer {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (col, coeff) in hits {
            // The pivot row for `col` contains no other pivot column, so one
            // pass over the original hits is enough.
            for (c, v) in &self.pivots[&col] {
                axpy_entry(&mut row, *c, &(-&coeff * v));
            }
        }
        row
    }

    /// Adds a row to the system. Returns `true` when the rank increased.
    pub fn push(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let row = self.reduce(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.recip().expect("nonzero lead");
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        for other in self.pivots.values_mut() {
            if let Some(coeff) = other.get(&pivot).cloned() {
                for (c, v) in &row {
                    axpy_entry(other, *c, &(-&coeff * v));
                }
            }
        }
        self.pivots.insert(pivot, row);
        true
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect()
    }

    /// A basis of the solution space of the homogeneous system, one dense
    /// vector per free column (that column set to one, the others zero).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[free] = Scalar::one();
                for (&p, row) in &self.pivots {
                    if let Some(c) = row.get(&free) {
                        v[p] = -c;
                    }
                }
                v
            })
            .collect()
    }

    /// Treats the last column as the right-hand side and returns the solution
    /// with all free variables set to zero, or `None` if inconsistent.
    pub fn particular_solution(&self) -> Option<Vec<Scalar>> {
        let rhs = self.ncols.checked_sub(1)?;
        if self.pivots.contains_key(&rhs) {
            return None;
        }
        let mut x = vec![Scalar::zero(); rhs];
        for (&p, row) in &self.pivots {
            if let Some(c) = row.get(&rhs) {
                x[p] = -c;
            }
        }
        Some(x)
    }
}

/// `row[col] += delta`, dropping the entry if it cancels.
pub fn axpy_entry(row: &mut SparseRow, col: usize, delta: &Scalar) {
    if delta.is_zero() {
        return;
    }
    match row.get_mut(&col) {
        Some(v) => {
            *v += delta;
            if v.is_zero() {
                row.remove(&col);
            }
        }
        None => {
            row.insert(col, delta.clone());
        }
    }
}
