//! Fraction-free (Bareiss) elimination over the integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// A copy with the listed rows removed.
    pub fn without_rows(&self, drop: &[usize]) -> Self {
        let kept: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        IntMatrix::from_fn(kept.len(), self.cols, |i, j| self.get(kept[i], j).clone())
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate().0
    }

    /// Exact determinant. Panics on a non-square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return BigInt::one();
        }
        let mut work = self.clone();
        let (rank, negate) = work.eliminate();
        if rank < self.rows {
            return BigInt::zero();
        }
        let last = work.get(self.rows - 1, self.cols - 1).clone();
        if negate {
            -last
        } else {
            last
        }
    }

    /// In-place Bareiss elimination. Returns the rank and whether an odd
    /// number of row swaps happened. Every division is exact: after each
    /// step the trailing entries are minors of the original matrix.
    fn eliminate(&mut self) -> (usize, bool) {
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut negate = false;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                negate = !negate;
            }
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let factor = self.get(i, c).clone();
                for j in c + 1..self.cols {
                    let v = (&pivot * self.get(i, j) - &factor * self.get(r, j)) / &prev;
                    self.set(i, j, v);
                }
                self.set(i, c, BigInt::zero());
            }
            prev = pivot;
            r += 1;
        }
        (r, negate)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl core::ops::Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|l| self.get(i, l) * rhs.get(l, j)).sum()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).determinant(), BigInt::from(-2));
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(6));
        let singular = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(singular.determinant(), BigInt::zero());
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![0, 2, 4], vec![0, 0, 1], vec![0, 1, 3]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn without_rows_and_product() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(m.without_rows(&[2]).rank(), 2);
        let g = &m * &m.transpose();
        assert!(g.is_symmetric());
        assert_eq!(*g.get(2, 2), BigInt::from(2));
    }
}
