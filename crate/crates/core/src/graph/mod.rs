//! Graph machinery shared by the solvers: spanning trees, union-find,
//! multigraphs with Euler tours, and Prüfer enumeration of labeled trees.

mod euler;
mod mst;
mod prufer;

pub use euler::euler_tour;
pub use mst::mst;
pub use prufer::{prufer_decode, prufer_tree_at, prufer_trees, tree_count, PruferTrees};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl WeightedEdge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Self { u, v, w }
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// A spanning tree on nodes `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeGraph {
    k: usize,
    edges: Vec<WeightedEdge>,
    adj: Vec<Vec<usize>>,
}

impl TreeGraph {
    /// Validates that `edges` form a spanning tree on `k` nodes.
    pub fn new(k: usize, edges: Vec<WeightedEdge>) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyGraph);
        }
        if edges.len() != k - 1 {
            return Err(Error::InvalidArgument(format!(
                "a tree on {k} nodes needs {} edges, got {}",
                k - 1,
                edges.len()
            )));
        }
        let mut uf = UnionFind::new(k);
        let mut adj = vec![Vec::new(); k];
        for e in &edges {
            if e.u >= k || e.v >= k || e.u == e.v {
                return Err(Error::InvalidArgument(format!(
                    "bad edge ({}, {})",
                    e.u, e.v
                )));
            }
            if e.w.is_nan() || e.w < 0.0 {
                return Err(Error::InvalidArgument(format!("negative weight {}", e.w)));
            }
            if !uf.union(e.u, e.v) {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) closes a cycle",
                    e.u, e.v
                )));
            }
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { k, edges, adj })
    }

    /// Unweighted tree from node pairs.
    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            k,
            pairs
                .iter()
                .map(|&(u, v)| WeightedEdge::new(u, v, 0.0))
                .collect(),
        )
    }

    pub fn node_count(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Edge set as sorted `(min, max)` pairs; equal for structurally equal trees.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Checks `|V_1| = 2 + Σ_{i≥2} |V_i|·(i − 2)` on the tree's degree sequence.
pub fn degree_identity_check(t: &TreeGraph) -> bool {
    let leaves = (0..t.k).filter(|&u| t.degree(u) == 1).count() as i64;
    let rhs: i64 = 2
        + (0..t.k)
            .map(|u| t.degree(u) as i64)
            .filter(|&d| d >= 2)
            .map(|d| d - 2)
            .sum::<i64>();
    leaves == rhs
}

/// Undirected multigraph; parallel edges allowed, self-loops rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "bad multigraph edge ({u}, {v})"
            )));
        }
        self.edges.push((u, v));
        Ok(())
    }

    /// Every tree edge twice.
    pub fn doubled(tree: &TreeGraph) -> Self {
        let mut g = Self::new(tree.node_count());
        for e in tree.edges() {
            g.edges.push((e.u, e.v));
            g.edges.push((e.u, e.v));
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// True if every degree is even and the edges form one connected piece.
    pub fn is_eulerian(&self) -> bool {
        if self.degrees().iter().any(|d| d % 2 == 1) {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut roots = self.edges.iter().map(|&(u, _)| uf.find(u));
        match roots.next() {
            None => true,
            Some(r) => roots.all(|x| x == r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_validation() {
        assert!(TreeGraph::from_pairs(3, &[(0, 1), (1, 2)]).is_ok());
        assert!(TreeGraph::from_pairs(3, &[(0, 1)]).is_err());
        assert!(TreeGraph::from_pairs(3, &[(0, 1), (1, 0)]).is_err());
        assert!(TreeGraph::from_pairs(3, &[(0, 0), (1, 2)]).is_err());
        assert_eq!(TreeGraph::from_pairs(0, &[]), Err(Error::EmptyGraph));
        assert!(TreeGraph::from_pairs(1, &[]).is_ok());
    }

    #[test]
    fn degree_identity_on_path_and_star() {
        let path = TreeGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(degree_identity_check(&path));
        let star = TreeGraph::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(degree_identity_check(&star));
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(4);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(!uf.union(1, 0));
        assert_ne!(uf.find(0), uf.find(2));
        assert!(uf.union(1, 3));
        assert_eq!(uf.find(0), uf.find(2));
    }

    #[test]
    fn eulerian_detection() {
        let t = TreeGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(Multigraph::doubled(&t).is_eulerian());
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1).unwrap();
        assert!(!g.is_eulerian());
        assert!(g.add_edge(2, 2).is_err());
    }
}
