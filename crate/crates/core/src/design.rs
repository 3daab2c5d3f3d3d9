//! Block designs and t-design verification.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{binomial_usize, colex_rank, Subsets};
use crate::error::DesignError;

/// A multiset of `k`-subsets (blocks) of the points `0..v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDesign {
    v: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockDesign {
    /// Each block is stored sorted. Blocks with repeated or out-of-range
    /// points, or of the wrong size, are rejected.
    pub fn new(v: usize, k: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            let distinct = block.windows(2).all(|w| w[0] < w[1]);
            if block.len() != k || !distinct || block.last().is_some_and(|&p| p >= v) {
                return Err(DesignError::BadBlock { block: i, k, v });
            }
            sorted.push(block);
        }
        Ok(BlockDesign { v, k, blocks: sorted })
    }

    /// Develops the base block `base` modulo `v`.
    pub fn from_difference_set(v: usize, base: &[usize]) -> Result<Self, DesignError> {
        let blocks = (0..v).map(|shift| base.iter().map(|&d| (d + shift) % v).collect()).collect();
        Self::new(v, base.len(), blocks)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    /// Number of blocks `b`.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Every block repeated `m` times.
    pub fn repeat_blocks(&self, m: usize) -> Self {
        let blocks = self.blocks.iter().flat_map(|b| core::iter::repeat_n(b.clone(), m)).collect();
        BlockDesign { v: self.v, k: self.k, blocks }
    }

    /// Returns `lambda` if every `t`-subset of points lies in exactly
    /// `lambda` blocks.
    pub fn verify_bibd(&self, t: usize) -> Result<usize, DesignError> {
        if t < 2 || t > self.k || self.k > self.v {
            return Err(DesignError::BadDesignShape { t, k: self.k, v: self.v });
        }
        let slots = binomial_usize(self.v, t)
            .ok_or(DesignError::BadDesignShape { t, k: self.k, v: self.v })?;
        let mut counts = vec![0usize; slots];
        for block in &self.blocks {
            for idx in Subsets::new(self.k, t) {
                let subset: Vec<usize> = idx.iter().map(|&i| block[i]).collect();
                counts[colex_rank(&subset)] += 1;
            }
        }
        let mut expected = None;
        for subset in Subsets::new(self.v, t) {
            let count = counts[colex_rank(&subset)];
            match expected {
                None => expected = Some(count),
                Some(e) if e != count => {
                    return Err(DesignError::NotADesign { subset, count, expected: e });
                }
                _ => {}
            }
        }
        Ok(expected.unwrap_or(0))
    }

    /// Largest number of copies of any single block.
    pub fn max_block_multiplicity(&self) -> usize {
        let mut counts: BTreeMap<&[usize], usize> = BTreeMap::new();
        for b in &self.blocks {
            *counts.entry(b.as_slice()).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> BlockDesign {
        BlockDesign::from_difference_set(7, &[1, 2, 4]).unwrap()
    }

    #[test]
    fn fano_is_a_2_design_with_index_one() {
        let d = fano();
        assert_eq!(d.num_blocks(), 7);
        assert_eq!(d.verify_bibd(2), Ok(1));
        assert_eq!(d.max_block_multiplicity(), 1);
    }

    #[test]
    fn fano_minus_a_block_fails() {
        let mut blocks = fano().blocks().to_vec();
        blocks.pop();
        let d = BlockDesign::new(7, 3, blocks).unwrap();
        assert!(matches!(d.verify_bibd(2), Err(DesignError::NotADesign { .. })));
    }

    #[test]
    fn complete_design_index_is_binomial() {
        for (v, k) in [(5, 3), (6, 3), (6, 4), (7, 2)] {
            let blocks = Subsets::new(v, k).collect();
            let d = BlockDesign::new(v, k, blocks).unwrap();
            assert_eq!(d.verify_bibd(2), Ok(binomial_usize(v - 2, k - 2).unwrap()));
        }
    }

    #[test]
    fn doubled_fano() {
        let d = fano().repeat_blocks(2);
        assert_eq!(d.verify_bibd(2), Ok(2));
        assert_eq!(d.max_block_multiplicity(), 2);
        assert_eq!(d.num_blocks(), 14);
    }

    #[test]
    fn bad_blocks_rejected() {
        assert!(BlockDesign::new(7, 3, vec![vec![0, 0, 1]]).is_err());
        assert!(BlockDesign::new(7, 3, vec![vec![0, 1, 7]]).is_err());
        assert!(BlockDesign::new(7, 3, vec![vec![0, 1]]).is_err());
    }
}
