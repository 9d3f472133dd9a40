use super::TreeGraph;
use crate::error::{Error, Result};

/// Number of labeled trees on `k` nodes, `k^(k−2)` (1 for `k ≤ 2`).
pub fn tree_count(k: usize) -> u64 {
    if k <= 2 {
        1
    } else {
        (k as u64).pow(k as u32 - 2)
    }
}

/// Decodes a Prüfer sequence of length `k − 2` over `0..k`.
pub fn prufer_decode(k: usize, seq: &[usize]) -> Result<TreeGraph> {
    if k == 0 {
        return Err(Error::EmptyGraph);
    }
    if k == 1 {
        return TreeGraph::from_pairs(1, &[]);
    }
    if seq.len() != k - 2 || seq.iter().any(|&x| x >= k) {
        return Err(Error::InvalidArgument(format!(
            "not a Prüfer sequence for {k} nodes: {seq:?}"
        )));
    }
    let mut degree = vec![1usize; k];
    for &x in seq {
        degree[x] += 1;
    }
    let mut pairs = Vec::with_capacity(k - 1);
    for &x in seq {
        let leaf = (0..k)
            .find(|&j| degree[j] == 1)
            .expect("a leaf always exists");
        pairs.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let mut rest = (0..k).filter(|&j| degree[j] == 1);
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    pairs.push((a, b));
    TreeGraph::from_pairs(k, &pairs)
}

/// The `idx`-th tree in lexicographic order of Prüfer sequences.
pub fn prufer_tree_at(k: usize, idx: u64) -> Result<TreeGraph> {
    if idx >= tree_count(k) {
        return Err(Error::InvalidArgument(format!(
            "tree index {idx} out of range"
        )));
    }
    let len = k.saturating_sub(2);
    let mut seq = vec![0usize; len];
    let mut rest = idx;
    for slot in seq.iter_mut().rev() {
        *slot = (rest % k as u64) as usize;
        rest /= k as u64;
    }
    prufer_decode(k, &seq)
}

/// Every labeled spanning tree on `k` nodes, once each, in Prüfer order.
pub fn prufer_trees(k: usize, cap: usize) -> Result<PruferTrees> {
    if k == 0 {
        return Err(Error::EmptyGraph);
    }
    if k > cap {
        return Err(Error::CapExceeded {
            what: "tree enumeration size",
            value: k as u64,
            cap: cap as u64,
        });
    }
    Ok(PruferTrees {
        k,
        next: 0,
        total: tree_count(k),
    })
}

/// Iterator returned by [`prufer_trees`].
#[derive(Debug, Clone)]
pub struct PruferTrees {
    k: usize,
    next: u64,
    total: u64,
}

impl Iterator for PruferTrees {
    type Item = TreeGraph;

    fn next(&mut self) -> Option<TreeGraph> {
        if self.next >= self.total {
            return None;
        }
        let t = prufer_tree_at(self.k, self.next).expect("index in range");
        self.next += 1;
        Some(t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for PruferTrees {}
