//! Generalized MST on grid clusters.
//!
//! Three solvers live here:
//!
//! * [`approximate_ggmst`]: MST over cells (cell distance = shortest edge
//!   between them), then every cell touched by more than one endpoint of that
//!   edge set is collapsed to a median point. Satisfies
//!   `w ≤ w_opt + √2·N − √2`, hence `w ≤ (1 + 4√2)·w_opt + 2√2`.
//! * [`dp_cell_tree`]: given a fixed spanning tree of cells, the cheapest
//!   one-point-per-cell realization of exactly that tree, by bottom-up DP.
//! * [`solve_ggmst`]: the ε-wrapper. Small `N` is solved exactly by running
//!   the DP over every labeled cell tree; large `N` falls back to the
//!   approximation, whose additive term is then dominated by ε·w_opt.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{CellId, Instance};
use crate::graph::{mst, prufer_tree_at, tree_count, TreeGraph, UnionFind};
use crate::oracle;
use crate::TOLERANCE;

/// Spanning tree whose nodes are cell indices of an [`Instance`].
#[derive(Debug, Clone, PartialEq)]
pub struct CellTree(TreeGraph);

impl CellTree {
    pub fn new(inst: &Instance, tree: TreeGraph) -> Result<Self> {
        if tree.node_count() != inst.num_cells() {
            return Err(Error::InvalidArgument(format!(
                "cell tree has {} nodes, instance has {} cells",
                tree.node_count(),
                inst.num_cells()
            )));
        }
        Ok(Self(tree))
    }

    pub fn graph(&self) -> &TreeGraph {
        &self.0
    }
}

/// Edge between two points of an instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEdge {
    pub p: usize,
    pub q: usize,
    pub w: f64,
}

/// A feasible GGMST tree: one chosen point per cell plus `N` edges between
/// chosen points.
#[derive(Debug, Clone, PartialEq)]
pub struct GgmstSolution {
    /// Chosen point index per cell index.
    pub chosen: Vec<usize>,
    /// Point-index pairs.
    pub edges: Vec<(usize, usize)>,
    pub weight: f64,
}

impl GgmstSolution {
    /// Builds a solution, computing the weight from the edges.
    pub fn from_parts(inst: &Instance, chosen: Vec<usize>, edges: Vec<(usize, usize)>) -> Self {
        let weight = edges.iter().map(|&(p, q)| inst.dist(p, q)).sum();
        Self {
            chosen,
            edges,
            weight,
        }
    }

    /// Chosen point keyed by cell.
    pub fn chosen_map(&self, inst: &Instance) -> BTreeMap<CellId, usize> {
        self.chosen
            .iter()
            .enumerate()
            .map(|(c, &p)| (inst.cell_id(c), p))
            .collect()
    }

    /// Number of edges, `N`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Same tree with nodes relabeled to cell indices.
    pub fn cell_tree(&self, inst: &Instance) -> Result<CellTree> {
        let edges = self
            .edges
            .iter()
            .map(|&(p, q)| {
                crate::graph::WeightedEdge::new(
                    inst.cell_of_point(p),
                    inst.cell_of_point(q),
                    inst.dist(p, q),
                )
            })
            .collect();
        CellTree::new(inst, TreeGraph::new(inst.num_cells(), edges)?)
    }

    /// Checks every feasibility invariant against `inst`.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let k = inst.num_cells();
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.chosen.len() != k {
            return bad(format!("{} chosen points for {k} cells", self.chosen.len()));
        }
        for (c, &p) in self.chosen.iter().enumerate() {
            if p >= inst.n() || inst.cell_of_point(p) != c {
                return bad(format!("point {p} is not in cell {}", inst.cell_id(c)));
            }
        }
        if self.edges.len() != k - 1 {
            return bad(format!("{} edges, expected {}", self.edges.len(), k - 1));
        }
        let mut uf = UnionFind::new(k);
        for &(p, q) in &self.edges {
            if p >= inst.n() || q >= inst.n() {
                return bad(format!("edge ({p}, {q}) out of range"));
            }
            let (a, b) = (inst.cell_of_point(p), inst.cell_of_point(q));
            if self.chosen[a] != p || self.chosen[b] != q {
                return bad(format!("edge ({p}, {q}) uses an unchosen point"));
            }
            if !uf.union(a, b) {
                return bad(format!("edge ({p}, {q}) closes a cycle"));
            }
        }
        let w: f64 = self.edges.iter().map(|&(p, q)| inst.dist(p, q)).sum();
        if (w - self.weight).abs() > TOLERANCE {
            return bad(format!("stored weight {} != recomputed {w}", self.weight));
        }
        Ok(())
    }

    /// Longest edge weight, 0 for an edgeless tree.
    pub fn max_edge(&self, inst: &Instance) -> f64 {
        self.edges
            .iter()
            .map(|&(p, q)| inst.dist(p, q))
            .fold(0.0, f64::max)
    }
}

/// Knobs for the ε-wrapper and its exact fallbacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub epsilon: f64,
    /// Largest cell count for which every labeled cell tree is enumerated.
    pub enumeration_cap: usize,
    /// Largest selection count (product of cell sizes) for brute force.
    pub exact_fallback_cap: u64,
    /// Largest odd-degree set handed to the matching DP.
    pub matching_cap: usize,
    /// Largest cell count for the exact tour DP.
    pub held_karp_cap: usize,
    /// Largest `|anchor cell| · 2^k · n²` work estimate for the exact tour DP.
    pub held_karp_work_cap: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.5,
            enumeration_cap: 8,
            exact_fallback_cap: 1_000_000,
            matching_cap: 20,
            held_karp_cap: 12,
            held_karp_work_cap: 500_000_000,
        }
    }
}

impl SolverConfig {
    pub fn with_epsilon(epsilon: f64) -> Result<Self> {
        let cfg = Self {
            epsilon,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// `max(15, 10√2/ε)`: at or below this `N` the wrapper solves exactly.
    pub fn small_n_threshold(&self) -> f64 {
        (10.0 * std::f64::consts::SQRT_2 / self.epsilon).max(15.0)
    }

    pub fn is_small(&self, big_n: usize) -> bool {
        big_n as f64 <= self.small_n_threshold()
    }
}

/// Which branch of [`solve_ggmst`] produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MstProvenance {
    /// Minimum of the cell-tree DP over every labeled cell tree.
    ExactEnumeration,
    /// Brute force over point selections.
    ExactSelection,
    /// Small `N` but too large for either exact route; plain approximation.
    HeuristicNoGuarantee,
    /// Large `N`: approximation within `(1 + 4√2 + ε)·opt`.
    Approx,
}

impl MstProvenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::ExactEnumeration => "exact-enumeration",
            Self::ExactSelection => "exact-selection",
            Self::HeuristicNoGuarantee => "heuristic-no-guarantee",
            Self::Approx => "approx",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::ExactEnumeration | Self::ExactSelection)
    }
}

impl fmt::Display for MstProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// MST over cells and the point edges realizing it (`G0`). `G0` may touch
/// several points of one cell.
pub fn cell_level_mst(inst: &Instance) -> (CellTree, Vec<PointEdge>) {
    let dist = inst.cell_distances();
    let tree = mst(inst.num_cells(), |a, b| dist.weight(a, b)).expect("instance has a cell");
    let g0 = tree
        .edges()
        .iter()
        .map(|e| {
            let ce = dist.edge(e.u, e.v);
            PointEdge {
                p: ce.p,
                q: ce.q,
                w: ce.weight,
            }
        })
        .collect();
    (CellTree(tree), g0)
}

/// Endpoints of `g0` grouped by cell, one entry per edge end.
pub fn endpoint_multiset(inst: &Instance, g0: &[PointEdge]) -> Vec<Vec<usize>> {
    let mut ends = vec![Vec::new(); inst.num_cells()];
    for e in g0 {
        ends[inst.cell_of_point(e.p)].push(e.p);
        ends[inst.cell_of_point(e.q)].push(e.q);
    }
    ends
}

/// Point of `cell` minimizing the summed distance to `targets`; ties go to
/// the lowest point index.
pub fn median_point(inst: &Instance, cell: usize, targets: &[usize]) -> (usize, f64) {
    let mut best = (usize::MAX, f64::INFINITY);
    for &p in inst.cell_points(cell) {
        let s: f64 = targets.iter().map(|&c| inst.dist(c, p)).sum();
        if s < best.1 {
            best = (p, s);
        }
    }
    best
}

/// Collapses every cell that holds more than one `g0` endpoint onto a median
/// point and reconnects the cell's edges to it.
///
/// The median is taken over all points of the cell and weighs each endpoint
/// by the number of `g0` edges it carries, so the objective is exactly the
/// triangle-inequality bound on the added weight. Cells are handled
/// independently of each other: `g0` is never rewritten in place.
pub fn median_merge(inst: &Instance, cell_tree: &CellTree, g0: &[PointEdge]) -> GgmstSolution {
    debug_assert_eq!(cell_tree.graph().edges().len(), g0.len());
    let ends = endpoint_multiset(inst, g0);
    let chosen: Vec<usize> = (0..inst.num_cells())
        .map(|c| {
            let e = &ends[c];
            match e.first() {
                None => inst.cell_points(c)[0],
                Some(&first) if e.iter().all(|&p| p == first) => first,
                Some(_) => median_point(inst, c, e).0,
            }
        })
        .collect();
    let edges = g0
        .iter()
        .map(|e| {
            (
                chosen[inst.cell_of_point(e.p)],
                chosen[inst.cell_of_point(e.q)],
            )
        })
        .collect();
    GgmstSolution::from_parts(inst, chosen, edges)
}

/// Cell-MST followed by median merging.
pub fn approximate_ggmst(inst: &Instance) -> GgmstSolution {
    let (tree, g0) = cell_level_mst(inst);
    median_merge(inst, &tree, &g0)
}

/// Cheapest realization of `t`, rooted at the first cell.
pub fn dp_cell_tree(inst: &Instance, t: &CellTree) -> GgmstSolution {
    dp_cell_tree_rooted(inst, t, 0)
}

/// Cheapest realization of `t` with the DP rooted at `root`. The optimum
/// weight does not depend on the root.
pub fn dp_cell_tree_rooted(inst: &Instance, t: &CellTree, root: usize) -> GgmstSolution {
    let g = t.graph();
    let k = g.node_count();
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    order.push(root);
    parent[root] = root;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
    }

    // cost[c][i]: cheapest realization of the subtree below c with c's i-th point chosen
    let mut cost: Vec<Vec<f64>> = (0..k)
        .map(|c| vec![0.0; inst.cell_points(c).len()])
        .collect();
    // pick[c][i]: best local point of c given the parent's i-th point
    let mut pick: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &c in order.iter().rev() {
        if c == root {
            continue;
        }
        let par = parent[c];
        let child_pts = inst.cell_points(c);
        let mut choice = Vec::with_capacity(inst.cell_points(par).len());
        for (pi, &p) in inst.cell_points(par).iter().enumerate() {
            let mut best = (0usize, f64::INFINITY);
            for (qi, &q) in child_pts.iter().enumerate() {
                let w = cost[c][qi] + inst.dist(p, q);
                if w < best.1 {
                    best = (qi, w);
                }
            }
            cost[par][pi] += best.1;
            choice.push(best.0);
        }
        pick[c] = choice;
    }

    let mut local = vec![0usize; k];
    let root_cost = &cost[root];
    for (i, &w) in root_cost.iter().enumerate() {
        if w < root_cost[local[root]] {
            local[root] = i;
        }
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &c in order.iter().skip(1) {
        let par = parent[c];
        local[c] = pick[c][local[par]];
        edges.push((
            inst.cell_points(par)[local[par]],
            inst.cell_points(c)[local[c]],
        ));
    }
    let chosen = (0..k).map(|c| inst.cell_points(c)[local[c]]).collect();
    GgmstSolution::from_parts(inst, chosen, edges)
}

/// Exact optimum via the DP over every labeled cell tree. Trees are scored in
/// parallel; ties go to the earliest tree in Prüfer order.
pub fn enumerate_cell_trees(inst: &Instance, cap: usize) -> Result<GgmstSolution> {
    let k = inst.num_cells();
    if k > cap {
        return Err(Error::CapExceeded {
            what: "cell count for tree enumeration",
            value: k as u64,
            cap: cap as u64,
        });
    }
    let (_, idx) = (0..tree_count(k))
        .into_par_iter()
        .map(|idx| {
            let tree = CellTree(prufer_tree_at(k, idx).expect("index in range"));
            (dp_cell_tree(inst, &tree).weight, idx)
        })
        .reduce(
            || (f64::INFINITY, u64::MAX),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let tree = CellTree(prufer_tree_at(k, idx)?);
    Ok(dp_cell_tree(inst, &tree))
}

/// ε-wrapper around the exact and approximate solvers.
///
/// * `N ≤ max(15, 10√2/ε)` and `k ≤ enumeration_cap`: exact by cell-tree
///   enumeration.
/// * `N` small but `k` above the cap: brute force over point selections when
///   their count fits `exact_fallback_cap`, otherwise the approximation with
///   no guarantee attached.
/// * Otherwise the approximation, within `(1 + 4√2 + ε)·opt`.
pub fn solve_ggmst(inst: &Instance, cfg: &SolverConfig) -> Result<(GgmstSolution, MstProvenance)> {
    cfg.validate()?;
    let k = inst.num_cells();
    if !cfg.is_small(inst.big_n()) {
        return Ok((approximate_ggmst(inst), MstProvenance::Approx));
    }
    if k <= cfg.enumeration_cap {
        return Ok((
            enumerate_cell_trees(inst, cfg.enumeration_cap)?,
            MstProvenance::ExactEnumeration,
        ));
    }
    if inst.selection_count() <= cfg.exact_fallback_cap {
        let sol = oracle::exact_ggmst(inst, cfg.exact_fallback_cap)?;
        return Ok((sol, MstProvenance::ExactSelection));
    }
    Ok((approximate_ggmst(inst), MstProvenance::HeuristicNoGuarantee))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_instance, Point};
    use crate::graph::{prufer_trees, WeightedEdge};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn inst(v: &[(f64, f64)]) -> Instance {
        build_instance(v.iter().map(|&p| Point::from(p)).collect()).unwrap()
    }

    fn random_instance(
        rng: &mut ChaCha8Rng,
        cells: usize,
        max_pts: usize,
        extent: i64,
    ) -> Instance {
        let mut ids = std::collections::BTreeSet::new();
        while ids.len() < cells {
            ids.insert((rng.gen_range(0..extent), rng.gen_range(0..extent)));
        }
        let mut pts = Vec::new();
        for (i, j) in ids {
            for _ in 0..rng.gen_range(1..=max_pts) {
                pts.push(Point::new(
                    i as f64 + rng.gen::<f64>(),
                    j as f64 + rng.gen::<f64>(),
                ));
            }
        }
        build_instance(pts).unwrap()
    }

    /// Every selection, scored on the fixed structure `t`.
    fn restricted_brute_force(inst: &Instance, t: &CellTree) -> f64 {
        let k = inst.num_cells();
        let mut sel = vec![0usize; k];
        let mut best = f64::INFINITY;
        loop {
            let w: f64 = t
                .graph()
                .edges()
                .iter()
                .map(|e| {
                    inst.dist(
                        inst.cell_points(e.u)[sel[e.u]],
                        inst.cell_points(e.v)[sel[e.v]],
                    )
                })
                .sum();
            best = best.min(w);
            let mut c = 0;
            loop {
                if c == k {
                    return best;
                }
                sel[c] += 1;
                if sel[c] < inst.cell_points(c).len() {
                    break;
                }
                sel[c] = 0;
                c += 1;
            }
        }
    }

    #[test]
    fn single_cell() {
        let i = inst(&[(0.2, 0.2), (0.7, 0.7)]);
        let (tree, g0) = cell_level_mst(&i);
        assert!(tree.graph().edges().is_empty());
        assert!(g0.is_empty());
        let (sol, tag) = solve_ggmst(&i, &SolverConfig::default()).unwrap();
        assert_eq!(sol.weight, 0.0);
        assert!(tag.is_exact());
        sol.validate(&i).unwrap();
        approximate_ggmst(&i).validate(&i).unwrap();
    }

    #[test]
    fn cell_mst_on_a_row() {
        let i = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5)]);
        let (_, g0) = cell_level_mst(&i);
        let ws: Vec<f64> = g0.iter().map(|e| e.w).collect();
        assert_eq!(ws, vec![1.0, 1.0]);
    }

    #[test]
    fn median_of_two_corners() {
        // cell (0,0) holds C_G = {(0.1,0.1), (0.9,0.9)} and a third point (0.5,0.1)
        let i = inst(&[(0.1, 0.1), (0.9, 0.9), (0.5, 0.1)]);
        let sums: Vec<f64> = (0..3)
            .map(|p| [0usize, 1].iter().map(|&c| i.dist(c, p)).sum())
            .collect();
        assert!((sums[0] - 1.131_370_85).abs() < 1e-8);
        assert!((sums[1] - 1.131_370_85).abs() < 1e-8);
        assert!((sums[2] - 1.294_427_19).abs() < 1e-8);
        assert_eq!(median_point(&i, 0, &[0, 1]).0, 0);
    }

    #[test]
    fn merge_is_identity_without_shared_cells() {
        let i = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5), (0.9, 0.1)]);
        let (tree, g0) = cell_level_mst(&i);
        let sol = median_merge(&i, &tree, &g0);
        let g0_pairs: Vec<_> = g0.iter().map(|e| (e.p, e.q)).collect();
        assert_eq!(sol.edges, g0_pairs);
        assert_eq!(sol.weight, g0.iter().map(|e| e.w).sum::<f64>());
    }

    #[test]
    fn merge_collapses_cell_with_two_endpoints() {
        // middle cell: left point touches the left cell, right point the right one
        let i = inst(&[(0.95, 0.5), (1.05, 0.5), (1.95, 0.5), (2.05, 0.5)]);
        let (tree, g0) = cell_level_mst(&i);
        let sol = median_merge(&i, &tree, &g0);
        sol.validate(&i).unwrap();
        assert_eq!(sol.chosen[1], 1);
        assert!((sol.weight - (0.1 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn dp_with_singletons_is_forced() {
        let i = inst(&[(0.5, 0.5), (1.5, 1.5), (2.5, 0.5), (3.5, 2.5)]);
        let t = CellTree::new(
            &i,
            TreeGraph::from_pairs(4, &[(0, 1), (1, 2), (1, 3)]).unwrap(),
        )
        .unwrap();
        let sol = dp_cell_tree(&i, &t);
        let forced = i.dist(0, 1) + i.dist(1, 2) + i.dist(1, 3);
        assert!((sol.weight - forced).abs() < 1e-12);
        sol.validate(&i).unwrap();
    }

    #[test]
    fn dp_matches_restricted_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..60 {
            let k = 3 + round % 4;
            let i = random_instance(&mut rng, k, 3, 4);
            let idx = rng.gen_range(0..tree_count(k));
            let t = CellTree::new(&i, prufer_tree_at(k, idx).unwrap()).unwrap();
            let sol = dp_cell_tree(&i, &t);
            sol.validate(&i).unwrap();
            assert_eq!(
                sol.cell_tree(&i).unwrap().graph().canonical_edges(),
                t.graph().canonical_edges()
            );
            let brute = restricted_brute_force(&i, &t);
            assert!((sol.weight - brute).abs() < 1e-9, "round {round}");
            for root in 0..k {
                let other = dp_cell_tree_rooted(&i, &t, root);
                assert!((other.weight - sol.weight).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dp_on_path_of_three_pairs() {
        let i = inst(&[
            (0.1, 0.5),
            (0.9, 0.2),
            (1.5, 0.9),
            (1.2, 0.1),
            (2.3, 0.4),
            (2.8, 0.8),
        ]);
        let t = CellTree::new(&i, TreeGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap()).unwrap();
        let mut brute = f64::INFINITY;
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    brute = brute.min(i.dist(a, b) + i.dist(b, c));
                }
            }
        }
        assert!((dp_cell_tree(&i, &t).weight - brute).abs() < 1e-12);
    }

    #[test]
    fn approximation_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let k = rng.gen_range(2..=7);
            let i = random_instance(&mut rng, k, 4, 4);
            let (tree, g0) = cell_level_mst(&i);
            assert_eq!(g0.len(), i.big_n());
            let w0: f64 = g0.iter().map(|e| e.w).sum();
            let sol = median_merge(&i, &tree, &g0);
            sol.validate(&i).unwrap();
            let n = i.big_n() as f64;
            assert!(sol.weight >= w0 - 1e-12);
            assert!(sol.weight - w0 <= SQRT2 * n - SQRT2 + 1e-9 || i.big_n() == 0);
            // edges keep their cell pairs, so each one can only grow
            for (e, &(p, q)) in g0.iter().zip(&sol.edges) {
                assert!(i.dist(p, q) >= e.w - 1e-12);
            }
            // per-cell median objective
            for (c, ends) in endpoint_multiset(&i, &g0).iter().enumerate() {
                if ends.len() < 2 {
                    continue;
                }
                let (_, s) = median_point(&i, c, ends);
                assert!(s <= SQRT2 * (ends.len() as f64 - 1.0) + 1e-9);
                let mut distinct = ends.clone();
                distinct.sort_unstable();
                distinct.dedup();
                let (_, s_set) = median_point(&i, c, &distinct);
                assert!(s_set <= SQRT2 * (distinct.len() as f64 - 1.0) + 1e-9);
            }
        }
    }

    #[test]
    fn enumeration_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let i = random_instance(&mut rng, 5, 2, 4);
            let (sol, tag) = solve_ggmst(&i, &SolverConfig::default()).unwrap();
            assert_eq!(tag, MstProvenance::ExactEnumeration);
            sol.validate(&i).unwrap();
            let exact = oracle::exact_ggmst(&i, 1 << 20).unwrap();
            assert!((sol.weight - exact.weight).abs() < 1e-9);
            // exhaustive check of the enumeration itself
            let best = prufer_trees(5, 8)
                .unwrap()
                .map(|t| dp_cell_tree(&i, &CellTree::new(&i, t).unwrap()).weight)
                .fold(f64::INFINITY, f64::min);
            assert_eq!(best, sol.weight);
        }
    }

    #[test]
    fn wrapper_branches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let i = random_instance(&mut rng, 10, 2, 6);
        let cfg = SolverConfig::default();
        assert_eq!(
            solve_ggmst(&i, &cfg).unwrap().1,
            MstProvenance::ExactSelection
        );

        let tight = SolverConfig {
            exact_fallback_cap: 4,
            ..cfg
        };
        let (sol, tag) = solve_ggmst(&i, &tight).unwrap();
        assert_eq!(tag, MstProvenance::HeuristicNoGuarantee);
        assert_eq!(sol, approximate_ggmst(&i));

        let big = random_instance(&mut rng, 40, 2, 12);
        let (sol, tag) = solve_ggmst(&big, &SolverConfig::with_epsilon(1.0).unwrap()).unwrap();
        assert_eq!(tag, MstProvenance::Approx);
        sol.validate(&big).unwrap();

        assert!(SolverConfig::with_epsilon(0.0).is_err());
        assert!(SolverConfig::with_epsilon(f64::NAN).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            SolverConfig::with_epsilon(1.0).unwrap().small_n_threshold(),
            15.0
        );
        let t = SolverConfig::with_epsilon(0.5).unwrap().small_n_threshold();
        assert!((t - 20.0 * SQRT2).abs() < 1e-12);
    }

    #[test]
    fn validate_catches_broken_solutions() {
        let i = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5)]);
        let good = approximate_ggmst(&i);
        good.validate(&i).unwrap();
        let mut bad = good.clone();
        bad.weight += 1.0;
        assert!(bad.validate(&i).is_err());
        let mut bad = good.clone();
        bad.edges.pop();
        assert!(bad.validate(&i).is_err());
        let mut bad = good;
        bad.edges[1] = bad.edges[0];
        assert!(bad.validate(&i).is_err());
        let t = TreeGraph::new(2, vec![WeightedEdge::new(0, 1, 1.0)]).unwrap();
        assert!(CellTree::new(&i, t).is_err());
    }
}
