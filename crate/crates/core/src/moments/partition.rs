//! Set partitions of `[n]` as restricted-growth strings, and the
//! Faà di Bruno style sums over them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Ratio;

/// Block sizes (decreasing) to the number of set partitions with those sizes.
pub type ShapeCounts = BTreeMap<Vec<usize>, u64>;

/// Largest `n` accepted; Bell(13) is already 27,644,437.
pub const MAX_PARTITION_N: usize = 12;

/// A partition of `{1..n}`, stored as its restricted-growth string:
/// `rgs[i]` is the block index of element `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    rgs: Vec<u8>,
    blocks: usize,
}

impl SetPartition {
    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    /// Blocks as sorted lists of 1-based elements, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(i + 1);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.blocks];
        for &b in &self.rgs {
            sizes[b as usize] += 1;
        }
        sizes
    }
}

/// Lexicographic iterator over the restricted-growth strings of length `n`.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<u8>,
    // prefix_max[i] = max(rgs[..=i])
    prefix_max: Vec<u8>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            rgs: vec![0; n],
            prefix_max: vec![0; n],
            done: n == 0,
        }
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let blocks = *self.prefix_max.last().expect("n >= 1") as usize + 1;
        let out = SetPartition {
            rgs: self.rgs.clone(),
            blocks,
        };
        self.advance();
        Some(out)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(Error::invalid(format!(
            "partition size must be in 1..={MAX_PARTITION_N}, got {n}"
        )));
    }
    Ok(())
}

/// All partitions of `[n]` in lexicographic restricted-growth order.
pub fn set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    check_n(n)?;
    Ok(SetPartitions::new(n).collect())
}

/// Block-size shape (sizes in decreasing order) to the number of set
/// partitions of `[n]` with that shape. Computed by enumeration and cached.
pub fn block_shapes(n: usize) -> Result<&'static ShapeCounts> {
    check_n(n)?;
    static CACHE: OnceLock<Vec<OnceLock<ShapeCounts>>> = OnceLock::new();
    let slots = CACHE.get_or_init(|| (0..=MAX_PARTITION_N).map(|_| OnceLock::new()).collect());
    Ok(slots[n].get_or_init(|| {
        let mut map = BTreeMap::new();
        let mut sizes = [0usize; MAX_PARTITION_N];
        let mut iter = SetPartitions::new(n);
        while !iter.done {
            let blocks = *iter.prefix_max.last().expect("n >= 1") as usize + 1;
            sizes[..blocks].iter_mut().for_each(|s| *s = 0);
            for &b in &iter.rgs {
                sizes[b as usize] += 1;
            }
            let mut shape = sizes[..blocks].to_vec();
            shape.sort_unstable_by(|a, b| b.cmp(a));
            *map.entry(shape).or_insert(0) += 1;
            iter.advance();
        }
        map
    }))
}

/// `sum_{pi in Pi_n} sign(pi) |pi|! prod_{B in pi} weight(|B|)`, where the
/// sign is `(-1)^{n-|pi|}` when `alternating` is set and `+1` otherwise.
/// `weights[b - 1]` holds `weight(b)`.
pub fn partition_sum(n: usize, weights: &[Ratio], alternating: bool) -> Result<Ratio> {
    let shapes = block_shapes(n)?;
    assert!(weights.len() >= n, "need a weight for every block size up to n");
    let mut total = Ratio::zero();
    for (shape, &count) in shapes {
        let blocks = shape.len();
        let fact: BigInt = (1..=blocks as u64).map(BigInt::from).product();
        let mut term = Ratio::from_integer(fact * count);
        for &b in shape {
            term *= &weights[b - 1];
        }
        if alternating && (n - blocks) % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}
