use super::{TreeGraph, WeightedEdge};
use crate::error::{Error, Result};

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Minimum spanning tree of the complete graph on `k` nodes (Prim, O(k²)).
///
/// `weight` must be symmetric, finite and nonnegative. Among equal-weight
/// crossing edges the lexicographically smallest `(min, max)` pair wins.
pub fn mst<F>(k: usize, weight: F) -> Result<TreeGraph>
where
    F: Fn(usize, usize) -> f64,
{
    if k == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut in_tree = vec![false; k];
    // best crossing edge per outside node: (weight, parent)
    let mut best: Vec<(f64, usize)> = vec![(f64::INFINITY, usize::MAX); k];
    let mut edges = Vec::with_capacity(k - 1);
    in_tree[0] = true;
    for v in 1..k {
        best[v] = (weight(0, v), 0);
    }
    for _ in 1..k {
        let mut pick = usize::MAX;
        for v in 0..k {
            if in_tree[v] {
                continue;
            }
            if pick == usize::MAX {
                pick = v;
                continue;
            }
            let (wv, pv) = best[v];
            let (wp, pp) = best[pick];
            if wv < wp || (wv == wp && key(pv, v) < key(pp, pick)) {
                pick = v;
            }
        }
        let (w, parent) = best[pick];
        in_tree[pick] = true;
        edges.push(WeightedEdge::new(parent, pick, w));
        for v in 0..k {
            if in_tree[v] {
                continue;
            }
            let w = weight(pick, v);
            let (bw, bp) = best[v];
            if w < bw || (w == bw && key(pick, v) < key(bp, v)) {
                best[v] = (w, pick);
            }
        }
    }
    TreeGraph::new(k, edges)
}
