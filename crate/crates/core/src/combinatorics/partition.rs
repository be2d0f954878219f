//! Set partitions of {0, ..., k-1} via restricted growth strings.

use crate::error::{Error, Result};

/// Bell(14) is about 1.9e8; nothing above that is enumerated.
pub const MAX_PARTITION_K: usize = 14;

/// A set partition in canonical form: blocks ordered by their minimum
/// element, members ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn from_rgs(rgs: &[u8]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &b) in rgs.iter().enumerate() {
            let b = b as usize;
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(i);
        }
        SetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn check_k(k: usize) -> Result<()> {
    if k > MAX_PARTITION_K {
        return Err(Error::BudgetExceeded {
            engine: "set partition enumeration",
            needed: format!("k = {k}"),
            budget: format!("k <= {MAX_PARTITION_K}"),
        });
    }
    Ok(())
}

/// Advance a restricted growth string in place. `prefix_max[i]` holds
/// `max(rgs[..=i])`. Returns false after the last string.
fn advance(rgs: &mut [u8], prefix_max: &mut [u8]) -> bool {
    let k = rgs.len();
    let mut i = k;
    while i > 1 {
        i -= 1;
        if rgs[i] <= prefix_max[i - 1] {
            rgs[i] += 1;
            prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
            for j in i + 1..k {
                rgs[j] = 0;
                prefix_max[j] = prefix_max[i];
            }
            return true;
        }
    }
    false
}

/// Visit every restricted growth string of length `k` in lexicographic
/// order, along with its block count. No allocation per partition.
pub fn for_each_rgs<F: FnMut(&[u8], usize)>(k: usize, mut visit: F) -> Result<()> {
    check_k(k)?;
    let mut rgs = vec![0u8; k];
    let mut prefix_max = vec![0u8; k];
    loop {
        let blocks = if k == 0 { 0 } else { prefix_max[k - 1] as usize + 1 };
        visit(&rgs, blocks);
        if !advance(&mut rgs, &mut prefix_max) {
            return Ok(());
        }
    }
}

/// Lazy iterator over all set partitions of a k-set.
pub struct SetPartitions {
    rgs: Vec<u8>,
    prefix_max: Vec<u8>,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition::from_rgs(&self.rgs);
        self.done = !advance(&mut self.rgs, &mut self.prefix_max);
        Some(out)
    }
}

pub fn enumerate_set_partitions(k: usize) -> Result<SetPartitions> {
    check_k(k)?;
    Ok(SetPartitions {
        rgs: vec![0; k],
        prefix_max: vec![0; k],
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (k, &b) in bell.iter().enumerate() {
            assert_eq!(enumerate_set_partitions(k).unwrap().count(), b, "k = {k}");
            let mut visited = 0;
            for_each_rgs(k, |_, _| visited += 1).unwrap();
            assert_eq!(visited, b);
        }
    }

    #[test]
    fn partitions_are_distinct_and_cover() {
        let all: Vec<SetPartition> = enumerate_set_partitions(5).unwrap().collect();
        let unique: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        for p in &all {
            let mut members: Vec<usize> = p.blocks().iter().flatten().copied().collect();
            members.sort_unstable();
            assert_eq!(members, (0..5).collect::<Vec<_>>());
            let mins: Vec<usize> = p.blocks().iter().map(|b| b[0]).collect();
            assert!(mins.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn first_and_last_of_k3() {
        let all: Vec<SetPartition> = enumerate_set_partitions(3).unwrap().collect();
        assert_eq!(all[0].blocks(), &[vec![0, 1, 2]]);
        assert_eq!(all[4].blocks(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn too_large() {
        assert!(enumerate_set_partitions(15).is_err());
    }
}
