//! Generalized TSP on grid clusters: double-tree and Christofides-style tours
//! built on the GGMST solvers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::Instance;
use crate::ggmst::{approximate_ggmst, solve_ggmst, GgmstSolution, SolverConfig};
use crate::graph::{euler_tour, Multigraph};
use crate::matching::{min_perfect_matching, Matching};
use crate::oracle;
use crate::TOLERANCE;

/// Closed tour visiting one point per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    /// Point indices in visiting order; the return edge is implicit.
    pub order: Vec<usize>,
    pub weight: f64,
}

impl Tour {
    pub fn from_order(inst: &Instance, order: Vec<usize>) -> Self {
        let weight = cycle_weight(inst, &order);
        Self { order, weight }
    }

    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let k = inst.num_cells();
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.order.len() != k {
            return bad(format!(
                "tour visits {} points for {k} cells",
                self.order.len()
            ));
        }
        let mut seen = vec![false; k];
        for &p in &self.order {
            if p >= inst.n() {
                return bad(format!("point {p} out of range"));
            }
            let c = inst.cell_of_point(p);
            if std::mem::replace(&mut seen[c], true) {
                return bad(format!("cell {} visited twice", inst.cell_id(c)));
            }
        }
        let w = cycle_weight(inst, &self.order);
        if (w - self.weight).abs() > TOLERANCE {
            return bad(format!("stored weight {} != recomputed {w}", self.weight));
        }
        Ok(())
    }

    /// Consecutive point pairs including the closing edge. Empty for a
    /// single-point tour.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.order.len();
        if k < 2 {
            return Vec::new();
        }
        (0..k)
            .map(|i| (self.order[i], self.order[(i + 1) % k]))
            .collect()
    }

    /// The tree left after deleting the heaviest tour edge.
    pub fn drop_heaviest_edge(&self, inst: &Instance) -> GgmstSolution {
        let k = self.order.len();
        let mut chosen = vec![0; inst.num_cells()];
        for &p in &self.order {
            chosen[inst.cell_of_point(p)] = p;
        }
        if k < 2 {
            return GgmstSolution::from_parts(inst, chosen, Vec::new());
        }
        let mut edges = self.edges();
        let heaviest = (0..edges.len())
            .max_by(|&a, &b| {
                let (wa, wb) = (
                    inst.dist(edges[a].0, edges[a].1),
                    inst.dist(edges[b].0, edges[b].1),
                );
                wa.total_cmp(&wb).then(b.cmp(&a))
            })
            .unwrap();
        if k == 2 {
            edges.truncate(1);
        } else {
            edges.remove(heaviest);
        }
        GgmstSolution::from_parts(inst, chosen, edges)
    }
}

/// Weight of the closed walk through `order` (0 for one point).
pub fn cycle_weight(inst: &Instance, order: &[usize]) -> f64 {
    let k = order.len();
    if k < 2 {
        return 0.0;
    }
    (0..k)
        .map(|i| inst.dist(order[i], order[(i + 1) % k]))
        .sum()
}

/// Weight of an open walk over point indices.
pub fn walk_weight(inst: &Instance, walk: &[usize]) -> f64 {
    walk.windows(2).map(|w| inst.dist(w[0], w[1])).sum()
}

/// Keeps the first visit of each node and drops the closing repeat.
pub fn shortcut(walk: &[usize], nodes: usize) -> Vec<usize> {
    let mut seen = vec![false; nodes];
    walk.iter()
        .copied()
        .filter(|&v| !std::mem::replace(&mut seen[v], true))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TspVariant {
    DoubleTree,
    Christofides,
}

impl TspVariant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::DoubleTree => "double-tree",
            Self::Christofides => "christofides",
        }
    }
}

impl fmt::Display for TspVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TspVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "double-tree" => Ok(Self::DoubleTree),
            "christofides" => Ok(Self::Christofides),
            other => Err(Error::InvalidArgument(format!(
                "unknown tour variant {other:?}"
            ))),
        }
    }
}

/// Which route produced a tour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TspProvenance {
    Exact,
    Approx,
    /// Christofides was asked for but the odd-degree set exceeded the
    /// matching cap; the double-tree tour was returned instead.
    DoubleTreeFallback,
}

impl TspProvenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Approx => "approx",
            Self::DoubleTreeFallback => "approx-double-tree-fallback",
        }
    }
}

impl fmt::Display for TspProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn cell_walk_to_tour(inst: &Instance, tree: &GgmstSolution, walk: &[usize]) -> Tour {
    let order = shortcut(walk, inst.num_cells())
        .into_iter()
        .map(|c| tree.chosen[c])
        .collect();
    Tour::from_order(inst, order)
}

/// Euler walk over cell indices for `graph`, starting at the first cell.
fn cell_euler_walk(graph: &Multigraph) -> Vec<usize> {
    euler_tour(graph, 0).expect("multigraph built to be eulerian")
}

fn tree_multigraph(inst: &Instance, tree: &GgmstSolution) -> Multigraph {
    let mut g = Multigraph::new(inst.num_cells());
    for &(p, q) in &tree.edges {
        let (a, b) = (inst.cell_of_point(p), inst.cell_of_point(q));
        g.add_edge(a, b).expect("tree edges join distinct cells");
    }
    g
}

/// Doubles the tree, walks an Euler tour from the first cell's point and
/// skips repeats. The result weighs at most twice the tree.
pub fn double_tree_tour(inst: &Instance, t: &GgmstSolution) -> Tour {
    let single = tree_multigraph(inst, t);
    let mut doubled = single.clone();
    for &(a, b) in single.edges() {
        doubled.add_edge(a, b).expect("valid edge");
    }
    let walk = cell_euler_walk(&doubled);
    let tour = cell_walk_to_tour(inst, t, &walk);
    debug_assert!(tour.weight <= 2.0 * t.weight + TOLERANCE);
    tour
}

/// Tree plus matching over the odd-degree cells of `tg`.
///
/// Cells are matched under the shortest-edge cell distance; each matched
/// pair is then realized between the points `tg` already uses in those cells.
pub fn christofides_multigraph(
    inst: &Instance,
    tg: &GgmstSolution,
    matching_cap: usize,
) -> Result<(Multigraph, Matching)> {
    let mut g = tree_multigraph(inst, tg);
    let odd: Vec<usize> = g
        .degrees()
        .iter()
        .enumerate()
        .filter(|(_, d)| *d % 2 == 1)
        .map(|(c, _)| c)
        .collect();
    let dist = inst.cell_distances();
    let matching = min_perfect_matching(&odd, |a, b| dist.weight(a, b), matching_cap)?;
    for &(a, b) in &matching.pairs {
        g.add_edge(a, b)?;
    }
    Ok((g, matching))
}

/// Christofides-style tour on the approximate GGMST. Falls back to the
/// double-tree tour when the odd-degree set is above `cfg.matching_cap`.
pub fn christofides_tour(inst: &Instance, cfg: &SolverConfig) -> Result<(Tour, TspProvenance)> {
    let tg = approximate_ggmst(inst);
    match christofides_multigraph(inst, &tg, cfg.matching_cap) {
        Ok((g, _)) => {
            let walk = cell_euler_walk(&g);
            Ok((cell_walk_to_tour(inst, &tg, &walk), TspProvenance::Approx))
        }
        Err(Error::CapExceeded { .. }) => Ok((
            double_tree_tour(inst, &tg),
            TspProvenance::DoubleTreeFallback,
        )),
        Err(e) => Err(e),
    }
}

/// Whether [`solve_ggtsp`] would take the exact route.
pub fn exact_tour_feasible(inst: &Instance, cfg: &SolverConfig) -> bool {
    cfg.is_small(inst.big_n())
        && inst.selection_count() <= cfg.exact_fallback_cap
        && inst.num_cells() <= cfg.held_karp_cap
        && oracle::held_karp_work(inst) <= cfg.held_karp_work_cap
}

/// Exact tour for small instances, otherwise the requested variant.
pub fn solve_ggtsp(
    inst: &Instance,
    cfg: &SolverConfig,
    variant: TspVariant,
) -> Result<(Tour, TspProvenance)> {
    cfg.validate()?;
    if exact_tour_feasible(inst, cfg) {
        let tour = oracle::exact_ggtsp(inst, cfg.exact_fallback_cap)?;
        return Ok((tour, TspProvenance::Exact));
    }
    match variant {
        TspVariant::DoubleTree => {
            let (tree, _) = solve_ggmst(inst, cfg)?;
            Ok((double_tree_tour(inst, &tree), TspProvenance::Approx))
        }
        TspVariant::Christofides => christofides_tour(inst, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_instance, min_cell_edge, Point};
    use crate::ggmst::dp_cell_tree;
    use crate::ggmst::CellTree;
    use crate::graph::TreeGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inst(v: &[(f64, f64)]) -> Instance {
        build_instance(v.iter().map(|&p| Point::from(p)).collect()).unwrap()
    }

    fn random_instance(rng: &mut ChaCha8Rng, cells: usize, max_pts: usize) -> Instance {
        let mut ids = std::collections::BTreeSet::new();
        while ids.len() < cells {
            ids.insert((rng.gen_range(0..5i64), rng.gen_range(0..5i64)));
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

    #[test]
    fn degenerate_sizes() {
        let one = inst(&[(0.3, 0.3), (0.6, 0.6)]);
        let t = approximate_ggmst(&one);
        let tour = double_tree_tour(&one, &t);
        assert_eq!(tour.weight, 0.0);
        assert_eq!(tour.order.len(), 1);
        assert_eq!(
            christofides_tour(&one, &SolverConfig::default())
                .unwrap()
                .0
                .weight,
            0.0
        );

        let two = inst(&[(0.9, 0.5), (0.1, 0.5), (1.2, 0.5)]);
        let d = min_cell_edge(&two, two.cell_id(0), two.cell_id(1))
            .unwrap()
            .weight;
        let (tour, tag) =
            solve_ggtsp(&two, &SolverConfig::default(), TspVariant::Christofides).unwrap();
        assert_eq!(tag, TspProvenance::Exact);
        assert_eq!(tour.weight, 2.0 * d);
        let (ct, _) = christofides_tour(&two, &SolverConfig::default()).unwrap();
        assert_eq!(ct.weight, 2.0 * d);
    }

    #[test]
    fn collinear_path() {
        let i = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5)]);
        let t = CellTree::new(&i, TreeGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap()).unwrap();
        let tree = dp_cell_tree(&i, &t);
        let tour = double_tree_tour(&i, &tree);
        assert_eq!(tour.order, vec![0, 1, 2]);
        assert_eq!(tour.weight, 4.0);
    }

    #[test]
    fn triangle_is_optimal() {
        let i = inst(&[(0.5, 0.5), (3.5, 0.5), (1.5, 2.5)]);
        let (tour, tag) = christofides_tour(&i, &SolverConfig::default()).unwrap();
        assert_eq!(tag, TspProvenance::Approx);
        let exact = oracle::exact_ggtsp(&i, 10).unwrap();
        assert!((tour.weight - exact.weight).abs() < 1e-12);
    }

    #[test]
    fn path_tree_matches_its_ends() {
        let i = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5), (3.5, 0.5)]);
        let tg = approximate_ggmst(&i);
        let (g, m) = christofides_multigraph(&i, &tg, 20).unwrap();
        assert_eq!(m.pairs, vec![(0, 3)]);
        assert!(g.is_eulerian());
        let (tour, _) = christofides_tour(&i, &SolverConfig::default()).unwrap();
        assert_eq!(tour.order, vec![0, 1, 2, 3]);
        assert_eq!(tour.weight, 6.0);
    }

    #[test]
    fn random_tours_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let cfg = SolverConfig::default();
        for _ in 0..60 {
            let k = rng.gen_range(1..=7);
            let i = random_instance(&mut rng, k, 3);
            let tree = approximate_ggmst(&i);
            let dt = double_tree_tour(&i, &tree);
            dt.validate(&i).unwrap();
            assert!(dt.weight <= 2.0 * tree.weight + 1e-9);

            let (g, m) = christofides_multigraph(&i, &tree, 20).unwrap();
            assert!(g.is_eulerian());
            assert_eq!(g.edges().len(), tree.edges.len() + m.pairs.len());
            let walk: Vec<usize> = euler_tour(&g, 0)
                .unwrap()
                .into_iter()
                .map(|c| tree.chosen[c])
                .collect();
            let (ct, _) = christofides_tour(&i, &cfg).unwrap();
            ct.validate(&i).unwrap();
            assert!(ct.weight <= walk_weight(&i, &walk) + 1e-9);

            let exact_mst = oracle::exact_ggmst(&i, 1 << 20).unwrap();
            assert!(dt.weight >= exact_mst.weight - 1e-9);
            let dropped = dt.drop_heaviest_edge(&i);
            dropped.validate(&i).unwrap();
        }
    }

    #[test]
    fn matching_cap_falls_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let i = random_instance(&mut rng, 12, 1);
        let cfg = SolverConfig {
            matching_cap: 0,
            ..SolverConfig::default()
        };
        let tg = approximate_ggmst(&i);
        let odd = tree_multigraph(&i, &tg)
            .degrees()
            .iter()
            .filter(|d| *d % 2 == 1)
            .count();
        assert!(odd > 0);
        let (tour, tag) = christofides_tour(&i, &cfg).unwrap();
        assert_eq!(tag, TspProvenance::DoubleTreeFallback);
        assert_eq!(tour, double_tree_tour(&i, &tg));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!(
            "double-tree".parse::<TspVariant>().unwrap(),
            TspVariant::DoubleTree
        );
        assert_eq!(
            "christofides".parse::<TspVariant>().unwrap(),
            TspVariant::Christofides
        );
        assert!("greedy".parse::<TspVariant>().is_err());
    }
}
