//! Sparse exact row reduction over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalars::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Reduced row echelon form, maintained incrementally. The pivot of a row is
/// its smallest column, so callers control which columns become pivots by
/// how they number them.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(target: &mut SparseRow, factor: &Rational, source: &SparseRow) {
    for (col, v) in source {
        let entry = target.entry(*col).or_insert_with(Rational::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(col);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot column → normalized row (pivot entry 1, zero in every other pivot column).
    pub fn rows(&self) -> &BTreeMap<usize, SparseRow> {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for col in hits {
            if let Some(f) = row.get(&col).cloned() {
                axpy(&mut row, &f, &self.rows[&col]);
            }
        }
        row
    }

    /// Adds a row to the span; returns its new pivot column, or `None` if it
    /// was already dependent.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let mut row = self.reduce(row);
        let (&pivot, lead) = row.iter().next()?;
        let inv = Rational::one() / lead;
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                axpy(other, &f, &row);
            }
        }
        self.rows.insert(pivot, row);
        Some(pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, rat(v, 1))).collect()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(row(&[(0, 1), (1, 1)])), Some(0));
        assert_eq!(e.insert(row(&[(1, 2), (2, 2)])), Some(1));
        assert_eq!(e.insert(row(&[(0, 1), (2, -1)])), None);
        assert_eq!(e.rank(), 2);
        // rows are x0 - x2 = 0 and x1 + x2 = 0
        assert_eq!(e.rows()[&0], row(&[(0, 1), (2, -1)]));
        assert_eq!(e.reduce(row(&[(0, 1)])), row(&[(2, 1)]));
        assert!(e.insert(SparseRow::new()).is_none());
    }
}
