use super::Multigraph;
use crate::error::{Error, Result};

/// Closed walk from `start` that uses every edge of `g` exactly once
/// (Hierholzer). Adjacency is scanned in `(neighbor, edge id)` order, so the
/// walk is a function of the edge list alone.
///
/// A graph with no edges yields `[start]`.
pub fn euler_tour(g: &Multigraph, start: usize) -> Result<Vec<usize>> {
    let n = g.node_count();
    if start >= n {
        return Err(Error::InvalidArgument(format!(
            "start node {start} out of range"
        )));
    }
    let edges = g.edges();
    if edges.is_empty() {
        return Ok(vec![start]);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    if let Some(odd) = adj.iter().position(|a| a.len() % 2 == 1) {
        return Err(Error::NotEulerian(format!("node {odd} has odd degree")));
    }
    if adj[start].is_empty() {
        return Err(Error::NotEulerian(format!(
            "start node {start} has no edges"
        )));
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut used = vec![false; edges.len()];
    let mut cursor = vec![0usize; n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&u) = stack.last() {
        let list = &adj[u];
        while cursor[u] < list.len() && used[list[cursor[u]].1] {
            cursor[u] += 1;
        }
        if let Some(&(v, id)) = list.get(cursor[u]) {
            used[id] = true;
            stack.push(v);
        } else {
            circuit.push(u);
            stack.pop();
        }
    }
    if circuit.len() != edges.len() + 1 {
        return Err(Error::NotEulerian("edge set is disconnected".into()));
    }
    circuit.reverse();
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{prufer_tree_at, tree_count, TreeGraph};
    use std::collections::HashMap;

    #[test]
    fn doubled_path() {
        let t = TreeGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let walk = euler_tour(&Multigraph::doubled(&t), 0).unwrap();
        assert_eq!(walk, vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn doubled_star() {
        let t = TreeGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let walk = euler_tour(&Multigraph::doubled(&t), 0).unwrap();
        assert_eq!(walk, vec![0, 1, 0, 2, 0, 3, 0]);
    }

    #[test]
    fn doubled_random_trees_use_each_edge_twice() {
        let total = tree_count(8);
        for idx in (0..total).step_by(9973) {
            let t = prufer_tree_at(8, idx).unwrap();
            let walk = euler_tour(&Multigraph::doubled(&t), 3).unwrap();
            assert_eq!(walk.len(), 2 * 7 + 1);
            assert_eq!(walk.first(), Some(&3));
            assert_eq!(walk.last(), Some(&3));
            let mut count: HashMap<(usize, usize), usize> = HashMap::new();
            for w in walk.windows(2) {
                *count.entry((w[0].min(w[1]), w[0].max(w[1]))).or_default() += 1;
            }
            assert_eq!(count.len(), 7);
            for e in t.canonical_edges() {
                assert_eq!(count[&e], 2);
            }
        }
    }

    #[test]
    fn rejects_odd_and_disconnected() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        assert!(matches!(euler_tour(&g, 0), Err(Error::NotEulerian(_))));

        let mut g = Multigraph::new(4);
        for _ in 0..2 {
            g.add_edge(0, 1).unwrap();
            g.add_edge(2, 3).unwrap();
        }
        assert!(matches!(euler_tour(&g, 0), Err(Error::NotEulerian(_))));
    }

    #[test]
    fn no_edges() {
        assert_eq!(euler_tour(&Multigraph::new(1), 0).unwrap(), vec![0]);
    }
}
