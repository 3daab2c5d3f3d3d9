//! Orthogonal arrays: storage, strength verification and row census.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{tuple_from_index, tuple_index, Subsets};
use crate::error::DesignError;

/// An `N x k` array over the symbols `0..n`.
///
/// The array makes no strength claim by itself; use
/// [`OrthogonalArray::strength_lambda`] to verify one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthogonalArray {
    n: usize,
    k: usize,
    entries: Vec<usize>,
}

impl OrthogonalArray {
    pub fn new(n: usize, rows: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let k = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(DesignError::RaggedRow { row: i, len: row.len(), expected: k });
            }
        }
        Self::from_flat(n, k, rows.into_iter().flatten().collect())
    }

    /// Builds an array from row-major entries.
    pub fn from_flat(n: usize, k: usize, entries: Vec<usize>) -> Result<Self, DesignError> {
        if n < 2 {
            return Err(DesignError::BadAlphabet(n));
        }
        let rows = entries.len().checked_div(k).unwrap_or(0);
        if k < 2 || rows == 0 || entries.len() != rows * k {
            return Err(DesignError::BadShape { rows, cols: k });
        }
        if let Some(pos) = entries.iter().position(|&e| e >= n) {
            return Err(DesignError::SymbolOutOfRange {
                row: pos / k,
                col: pos % k,
                value: entries[pos],
                n,
            });
        }
        Ok(OrthogonalArray { n, k, entries })
    }

    /// Alphabet size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of rows, `N`.
    pub fn num_rows(&self) -> usize {
        self.entries.len() / self.k
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.entries.chunks_exact(self.k)
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.entries[row * self.k + col]
    }

    /// Column `j` as a vector of symbols.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows().map(|r| r[j]).collect()
    }

    /// Verifies strength `t` and returns the index `lambda = N / n^t`.
    ///
    /// Every one of the `C(k, t)` column subsets is checked against a full
    /// frequency table of size `n^t`. The first deviation found, in
    /// lexicographic order of column subsets and then tuples, is reported.
    pub fn strength_lambda(&self, t: usize) -> Result<usize, DesignError> {
        if t < 2 || t > self.k {
            return Err(DesignError::BadStrength { t, k: self.k });
        }
        let n_pow_t = u32::try_from(t)
            .ok()
            .and_then(|t| self.n.checked_pow(t))
            .ok_or(DesignError::NonintegralIndex { rows: self.num_rows(), n_pow_t: usize::MAX })?;
        let rows = self.num_rows();
        if rows % n_pow_t != 0 {
            return Err(DesignError::NonintegralIndex { rows, n_pow_t });
        }
        let lambda = rows / n_pow_t;
        let mut freq = vec![0usize; n_pow_t];
        for columns in Subsets::new(self.k, t) {
            freq.iter_mut().for_each(|f| *f = 0);
            for row in self.rows() {
                freq[tuple_index(columns.iter().map(|&c| row[c]), self.n)] += 1;
            }
            if let Some((idx, &count)) = freq.iter().enumerate().find(|(_, &f)| f != lambda) {
                return Err(DesignError::NotAnOA {
                    columns,
                    tuple: tuple_from_index(idx, self.n, t),
                    count,
                    expected: lambda,
                });
            }
        }
        Ok(lambda)
    }

    /// Census of distinct rows and their multiplicities.
    pub fn row_multiplicities(&self) -> RowMultiplicityReport {
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for row in self.rows() {
            *counts.entry(row.to_vec()).or_default() += 1;
        }
        let max = counts.values().copied().max().unwrap_or(0);
        let witness = self
            .rows()
            .position(|r| counts[r] == max)
            .unwrap_or(0);
        RowMultiplicityReport { counts, max_multiplicity: max, witness }
    }

    /// Applies a bijection to the symbols of each column.
    ///
    /// `maps[j][s]` is the new symbol for `s` in column `j`. Panics if a map
    /// is not a permutation of `0..n`.
    pub fn relabel(&self, maps: &[Vec<usize>]) -> Self {
        assert_eq!(maps.len(), self.k);
        for map in maps {
            let mut seen = vec![false; self.n];
            assert_eq!(map.len(), self.n);
            for &s in map {
                assert!(s < self.n && !seen[s], "column map is not a permutation");
                seen[s] = true;
            }
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(pos, &e)| maps[pos % self.k][e])
            .collect();
        OrthogonalArray { n: self.n, k: self.k, entries }
    }

    /// Relabels each column so row `i` becomes all zeros, then moves every
    /// copy of that row to the end. Other rows keep their relative order.
    pub fn normalize_to_row(&self, i: usize) -> Result<Self, DesignError> {
        if i >= self.num_rows() {
            return Err(DesignError::RowOutOfRange { index: i, rows: self.num_rows() });
        }
        let target = self.row(i);
        let maps: Vec<Vec<usize>> = target
            .iter()
            .map(|&s| {
                let mut map: Vec<usize> = (0..self.n).collect();
                map.swap(0, s);
                map
            })
            .collect();
        let relabeled = self.relabel(&maps);
        let (zeros, others): (Vec<&[usize]>, Vec<&[usize]>) =
            relabeled.rows().partition(|r| r.iter().all(|&e| e == 0));
        let entries = others.into_iter().chain(zeros).flatten().copied().collect();
        Ok(OrthogonalArray { n: self.n, k: self.k, entries })
    }

    /// Counts zeros in each of the first `N - m` rows.
    ///
    /// The last `m` rows must be all-zero, as produced by
    /// [`normalize_to_row`](Self::normalize_to_row).
    pub fn symbol_counts(&self, m: usize) -> Result<SymbolCountVector, DesignError> {
        let rows = self.num_rows();
        if m > rows {
            return Err(DesignError::BadMultiplicity { m, rows });
        }
        if self.rows().skip(rows - m).any(|r| r.iter().any(|&e| e != 0)) {
            return Err(DesignError::NotNormalized { m });
        }
        let counts = self
            .rows()
            .take(rows - m)
            .map(|r| r.iter().filter(|&&e| e == 0).count())
            .collect();
        Ok(SymbolCountVector { counts })
    }

    /// Vertical concatenation of `m` copies.
    pub fn stack(&self, m: usize) -> Self {
        assert!(m >= 1, "stack needs at least one copy");
        let mut entries = Vec::with_capacity(self.entries.len() * m);
        for _ in 0..m {
            entries.extend_from_slice(&self.entries);
        }
        OrthogonalArray { n: self.n, k: self.k, entries }
    }

    /// Rows sorted lexicographically; equal arrays up to row order compare equal.
    pub fn canonical_rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.rows().map(<[usize]>::to_vec).collect();
        rows.sort();
        rows
    }
}

/// Multiset census of the rows of an array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowMultiplicityReport {
    pub counts: BTreeMap<Vec<usize>, usize>,
    pub max_multiplicity: usize,
    /// Index of the first row (in row order) achieving the maximum.
    pub witness: usize,
}

impl RowMultiplicityReport {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Number of copies of `row` in the array.
    pub fn multiplicity_of(&self, row: &[usize]) -> usize {
        self.counts.get(row).copied().unwrap_or(0)
    }
}

/// Per-row counts of the designated symbol 0 in the first `N - m` rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolCountVector {
    pub counts: Vec<usize>,
}

impl SymbolCountVector {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.counts.iter().map(|&a| a as u64).sum()
    }

    /// `sum a_i (a_i - 1)`
    pub fn sum_falling(&self) -> u64 {
        self.counts.iter().map(|&a| (a as u64) * (a as u64).saturating_sub(1)).sum()
    }

    pub fn sum_squares(&self) -> u64 {
        self.counts.iter().map(|&a| (a as u64) * (a as u64)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> OrthogonalArray {
        OrthogonalArray::new(2, vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])
            .unwrap()
    }

    #[test]
    fn parity_array_has_index_one() {
        assert_eq!(parity().strength_lambda(2), Ok(1));
    }

    #[test]
    fn repeated_column_is_not_an_oa() {
        let a = OrthogonalArray::new(2, vec![vec![0, 0], vec![0, 0], vec![1, 1], vec![1, 1]]).unwrap();
        match a.strength_lambda(2) {
            Err(DesignError::NotAnOA { columns, tuple, count, expected }) => {
                assert_eq!(columns, [0, 1]);
                assert_eq!(tuple, [0, 0]);
                assert_eq!((count, expected), (2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn short_array_is_nonintegral() {
        let a = OrthogonalArray::new(2, vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            a.strength_lambda(2),
            Err(DesignError::NonintegralIndex { rows: 2, n_pow_t: 4 })
        );
    }

    #[test]
    fn bad_strength_and_bad_symbols() {
        assert!(matches!(parity().strength_lambda(4), Err(DesignError::BadStrength { .. })));
        assert!(matches!(parity().strength_lambda(1), Err(DesignError::BadStrength { .. })));
        assert!(matches!(
            OrthogonalArray::new(2, vec![vec![0, 2]]),
            Err(DesignError::SymbolOutOfRange { row: 0, col: 1, value: 2, n: 2 })
        ));
        assert!(matches!(
            OrthogonalArray::new(2, vec![vec![0, 1], vec![0]]),
            Err(DesignError::RaggedRow { row: 1, .. })
        ));
    }

    #[test]
    fn strength_three_of_full_factorial() {
        let rows = (0..8).map(|i| tuple_from_index(i, 2, 3)).collect();
        let a = OrthogonalArray::new(2, rows).unwrap();
        assert_eq!(a.strength_lambda(3), Ok(1));
        assert_eq!(a.strength_lambda(2), Ok(2));
    }

    #[test]
    fn multiplicities() {
        let r = parity().row_multiplicities();
        assert_eq!(r.max_multiplicity, 1);
        assert!(r.counts.values().all(|&c| c == 1));
        let s = parity().stack(3).row_multiplicities();
        assert_eq!(s.max_multiplicity, 3);
        assert!(s.counts.values().all(|&c| c == 3));
        assert_eq!(s.total(), 12);
        assert_eq!(s.witness, 0);
    }

    #[test]
    fn normalize_relabels_by_transposition() {
        let a = OrthogonalArray::new(3, vec![vec![0, 0, 0], vec![2, 0, 1], vec![1, 2, 2]]).unwrap();
        let b = a.normalize_to_row(1).unwrap();
        // {2<->0}, identity, {1<->0}
        assert_eq!(b.row(0), [2, 0, 1]);
        assert_eq!(b.row(1), [1, 2, 2]);
        assert_eq!(b.row(2), [0, 0, 0]);
    }

    #[test]
    fn normalize_zero_row_only_permutes() {
        let a = parity().stack(2);
        let b = a.normalize_to_row(0).unwrap();
        assert_eq!(b.canonical_rows(), a.canonical_rows());
        assert_eq!(b.row(6), [0, 0, 0]);
        assert_eq!(b.row(7), [0, 0, 0]);
        assert_eq!(b.strength_lambda(2), a.strength_lambda(2));
        assert!(matches!(a.normalize_to_row(8), Err(DesignError::RowOutOfRange { .. })));
    }

    #[test]
    fn symbol_counts_of_parity() {
        let b = parity().normalize_to_row(0).unwrap();
        assert_eq!(b.symbol_counts(1).unwrap().counts, [1, 1, 1]);
        assert_eq!(parity().symbol_counts(0).unwrap().counts, [3, 1, 1, 1]);
        assert!(matches!(parity().symbol_counts(1), Err(DesignError::NotNormalized { m: 1 })));
    }

    #[test]
    fn symbol_counts_degenerate_all_rows() {
        let a = OrthogonalArray::new(2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(a.symbol_counts(2).unwrap().is_empty());
    }

    #[test]
    fn stack_identity_and_index() {
        assert_eq!(parity().stack(1), parity());
        let s = parity().stack(2);
        assert_eq!(s.num_rows(), 8);
        assert_eq!(s.strength_lambda(2), Ok(2));
    }
}
