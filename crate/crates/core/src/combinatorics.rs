//! Small counting helpers shared by the array, design and bounds modules.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient in machine words; `None` on overflow.
pub fn binomial_usize(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Iterates the `k`-subsets of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Colexicographic rank of a sorted subset; a bijection onto `0..C(n,k)`.
pub fn colex_rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &x)| binomial_usize(x, i + 1).unwrap_or(usize::MAX))
        .sum()
}

/// Mixed-radix index of a tuple over an alphabet of size `n`.
pub fn tuple_index(tuple: impl IntoIterator<Item = usize>, n: usize) -> usize {
    tuple.into_iter().fold(0, |acc, s| acc * n + s)
}

/// Inverse of [`tuple_index`] for tuples of length `len`.
pub fn tuple_from_index(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(11, 2), BigUint::from(55u32));
        assert_eq!(binomial(7, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(binomial_usize(10, 3), Some(120));
    }

    #[test]
    fn subsets_and_colex_rank_cover_range() {
        let all: Vec<_> = Subsets::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], [0, 1, 2]);
        assert_eq!(all[9], [2, 3, 4]);
        let mut ranks: Vec<_> = all.iter().map(|s| colex_rank(s)).collect();
        ranks.sort();
        assert_eq!(ranks, (0..10).collect::<Vec<_>>());
        assert_eq!(Subsets::new(2, 3).count(), 0);
        assert_eq!(Subsets::new(3, 0).count(), 1);
    }

    #[test]
    fn tuple_index_roundtrip() {
        for i in 0..27 {
            assert_eq!(tuple_index(tuple_from_index(i, 3, 3), 3), i);
        }
    }
}
