//! Ordered partitions `J = {I_1, ..., I_m}` of the axis set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree a partition may describe.
pub const MAX_PARTITION_DEGREE: usize = 64;

/// Ordered blocks of 0-based axes, each sorted ascending, disjoint and
/// covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionSpec {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    position: Vec<usize>,
}

impl PartitionSpec {
    /// Consecutive ascending blocks of the given sizes: `[2, 1]` gives
    /// `{1,2}, {3}`.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut next = 0usize;
        let mut blocks = Vec::with_capacity(sizes.len());
        for &size in sizes {
            if size == 0 {
                return Err(Error::InvalidPartition("block sizes must be positive".into()));
            }
            let end = next
                .checked_add(size)
                .filter(|&e| e <= MAX_PARTITION_DEGREE)
                .ok_or_else(|| Error::InvalidPartition(format!("degree exceeds {MAX_PARTITION_DEGREE}")))?;
            blocks.push((next..end).collect());
            next = end;
        }
        Self::from_blocks(blocks)
    }

    /// Arbitrary disjoint blocks of 0-based axes covering `0..n`.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n > MAX_PARTITION_DEGREE {
            return Err(Error::InvalidPartition(format!("degree exceeds {MAX_PARTITION_DEGREE}")));
        }
        let mut block_of = vec![usize::MAX; n];
        let mut position = vec![0; n];
        for (i, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for (p, &axis) in block.iter().enumerate() {
                if axis >= n || block_of[axis] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "axis {} repeated or out of range",
                        axis + 1
                    )));
                }
                block_of[axis] = i;
                position[axis] = p;
            }
        }
        Ok(PartitionSpec {
            n,
            blocks,
            block_of,
            position,
        })
    }

    /// All singleton blocks.
    pub fn singletons(n: usize) -> Result<Self> {
        Self::from_sizes(&vec![1; n])
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of blocks `m`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block index containing `axis`.
    pub fn block_of(&self, axis: usize) -> usize {
        self.block_of[axis]
    }

    /// Ordinal position of `axis` inside its sorted block.
    pub fn position(&self, axis: usize) -> usize {
        self.position[axis]
    }

    /// Every ordered composition of `n` (every partition shape the grammar can
    /// express), in lexicographic order of size lists.
    pub fn all_compositions(n: usize) -> Vec<PartitionSpec> {
        fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(prefix.clone());
                return;
            }
            for k in 1..=rest {
                prefix.push(k);
                rec(rest - k, prefix, out);
                prefix.pop();
            }
        }
        let mut sizes = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut sizes);
        }
        sizes
            .iter()
            .map(|s| PartitionSpec::from_sizes(s).expect("valid composition"))
            .collect()
    }
}

impl fmt::Display for PartitionSpec {
    /// Size-list form when the blocks are consecutive, explicit blocks
    /// otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let consecutive = self
            .blocks
            .iter()
            .flatten()
            .enumerate()
            .all(|(t, &axis)| t == axis);
        if consecutive {
            let sizes: Vec<String> = self.block_sizes().iter().map(usize::to_string).collect();
            f.write_str(&sizes.join(","))
        } else {
            let blocks: Vec<String> = self
                .blocks
                .iter()
                .map(|b| {
                    let axes: Vec<String> = b.iter().map(|a| (a + 1).to_string()).collect();
                    format!("{{{}}}", axes.join(","))
                })
                .collect();
            f.write_str(&blocks.join(""))
        }
    }
}

impl FromStr for PartitionSpec {
    type Err = Error;

    /// Parses the size-list grammar `k1,k2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse("partition", "empty input"));
        }
        let sizes = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<usize>()
                    .map_err(|_| Error::parse("partition", format!("bad block size `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionSpec::from_sizes(&sizes)
    }
}

impl Serialize for PartitionSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartitionSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
