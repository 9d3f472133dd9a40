use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::Instance;
use crate::ggmst::GgmstSolution;
use crate::TOLERANCE;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Subtree sizes (in edges) with a proved minimum weight.
pub const LEMMA_SIZES: [usize; 4] = [4, 7, 8, 9];

/// Proved minimum weight of a subtree with `edges` edges whose vertices lie
/// in distinct cells.
pub fn subtree_threshold(edges: usize) -> Option<f64> {
    let sqrt3 = 3f64.sqrt();
    match edges {
        4 => Some(1.0),
        7 => Some((2.0 * 6f64.sqrt() + (6.0 - 3.0 * sqrt3).sqrt()) / 3.0),
        8 => Some(2.0),
        9 => Some(1.0 + sqrt3),
        _ => None,
    }
}

/// One verified inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditEntry {
    pub name: String,
    pub pass: bool,
    /// Bound minus achieved value; `None` when the check was skipped.
    pub margin: Option<f64>,
    /// Point-index edges of the tightest (or offending) configuration.
    pub witness: Vec<(usize, usize)>,
    pub note: String,
}

impl AuditEntry {
    fn from_margin(name: impl Into<String>, margin: f64) -> Self {
        Self {
            name: name.into(),
            pass: margin >= -TOLERANCE,
            margin: Some(margin),
            witness: Vec::new(),
            note: String::new(),
        }
    }

    fn skipped(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: true,
            margin: None,
            witness: Vec::new(),
            note: note.into(),
        }
    }
}

/// Ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn push(&mut self, entry: AuditEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// Smallest recorded margin, ignoring skipped checks.
    pub fn min_margin(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(|e| e.margin)
            .reduce(f64::min)
    }

    /// `check,pass,margin,witness,note` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,pass,margin,witness,note\n");
        for e in &self.entries {
            let margin = e.margin.map(|m| m.to_string()).unwrap_or_default();
            let witness: Vec<String> = e.witness.iter().map(|(p, q)| format!("{p}-{q}")).collect();
            writeln!(
                out,
                "{},{},{},{},{}",
                e.name,
                e.pass,
                margin,
                witness.join(" "),
                e.note.replace(',', ";")
            )
            .unwrap();
        }
        out
    }
}

fn ensure_feasible(inst: &Instance, sol: &GgmstSolution, what: &str) -> Result<()> {
    sol.validate(inst).map_err(|e| {
        Error::InvalidArgument(format!("{what} is not feasible for this instance: {e}"))
    })
}

/// `w(approx) ≤ w(opt) + √2·N − √2`. Vacuous for `N = 0`.
pub fn verify_additive_bound(
    inst: &Instance,
    approx: &GgmstSolution,
    opt: &GgmstSolution,
) -> Result<AuditEntry> {
    ensure_feasible(inst, approx, "approximate solution")?;
    ensure_feasible(inst, opt, "optimal solution")?;
    let n = inst.big_n();
    if n == 0 {
        return Ok(AuditEntry::from_margin("additive-bound", 0.0));
    }
    let bound = opt.weight + SQRT2 * n as f64 - SQRT2;
    Ok(AuditEntry::from_margin(
        "additive-bound",
        bound - approx.weight,
    ))
}

/// `w(approx) ≤ (1 + 4√2)·w(opt) + 2√2`.
pub fn verify_ratio_bound(
    inst: &Instance,
    approx: &GgmstSolution,
    opt: &GgmstSolution,
) -> Result<AuditEntry> {
    ensure_feasible(inst, approx, "approximate solution")?;
    ensure_feasible(inst, opt, "optimal solution")?;
    let bound = (1.0 + 4.0 * SQRT2) * opt.weight + 2.0 * SQRT2;
    Ok(AuditEntry::from_margin(
        "ratio-bound",
        bound - approx.weight,
    ))
}

/// `N ≤ 4·w + 3`. Holds for any feasible tree since it weighs at least the
/// optimum.
pub fn verify_lower_bound(inst: &Instance, sol: &GgmstSolution) -> Result<AuditEntry> {
    ensure_feasible(inst, sol, "solution")?;
    let margin = 4.0 * sol.weight + 3.0 - inst.big_n() as f64;
    Ok(AuditEntry::from_margin("lower-bound-edges", margin))
}

/// Generic `value ≤ factor·reference + additive`.
pub fn verify_bound(
    name: &str,
    value: f64,
    reference: f64,
    factor: f64,
    additive: f64,
) -> AuditEntry {
    AuditEntry::from_margin(name, factor * reference + additive - value)
}

/// Calls `visit` on every connected vertex set of size `size` in the graph
/// given by sorted adjacency lists, each exactly once. Sets are grown from
/// their smallest vertex (ESU enumeration). Stops when `visit` returns false.
pub fn visit_connected_subsets(
    adj: &[Vec<usize>],
    size: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn extend(
        adj: &[Vec<usize>],
        size: usize,
        root: usize,
        sub: &mut Vec<usize>,
        in_sub: &mut [bool],
        ext: Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if sub.len() == size {
            return visit(sub);
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in &adj[w] {
                if u > root
                    && !in_sub[u]
                    && u != w
                    && !next.contains(&u)
                    && !sub.iter().any(|&s| adj[s].contains(&u))
                {
                    next.push(u);
                }
            }
            sub.push(w);
            in_sub[w] = true;
            let go_on = extend(adj, size, root, sub, in_sub, next, visit);
            in_sub[w] = false;
            sub.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    if size == 0 {
        return;
    }
    let mut in_sub = vec![false; adj.len()];
    for v in 0..adj.len() {
        let ext: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
        let mut sub = vec![v];
        in_sub[v] = true;
        let go_on = extend(adj, size, v, &mut sub, &mut in_sub, ext, visit);
        in_sub[v] = false;
        if !go_on {
            return;
        }
    }
}

/// Checks the minimum-weight lemmas on connected subtrees of `sol`.
///
/// For each requested size `e`, up to `sample_cap` subtrees with `e` edges
/// are enumerated and each must weigh at least the proved threshold.
pub fn audit_subtree_lemmas(
    inst: &Instance,
    sol: &GgmstSolution,
    sizes: &[usize],
    sample_cap: usize,
) -> Result<AuditReport> {
    ensure_feasible(inst, sol, "solution")?;
    let k = inst.num_cells();
    // cell-level adjacency with the realizing point edge
    let mut adj = vec![Vec::new(); k];
    let mut edge_of = std::collections::HashMap::new();
    for &(p, q) in &sol.edges {
        let (a, b) = (inst.cell_of_point(p), inst.cell_of_point(q));
        adj[a].push(b);
        adj[b].push(a);
        edge_of.insert((a.min(b), a.max(b)), (p, q));
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut report = AuditReport::default();
    for &size in sizes {
        let name = format!("lemma-subtree-{size}");
        let Some(threshold) = subtree_threshold(size) else {
            return Err(Error::InvalidArgument(format!(
                "no lemma for subtrees with {size} edges"
            )));
        };
        if size > sol.edge_count() {
            report.push(AuditEntry::skipped(
                name,
                format!("tree has only {} edges", sol.edge_count()),
            ));
            continue;
        }
        let mut seen = 0usize;
        let mut worst = (f64::INFINITY, Vec::new());
        visit_connected_subsets(&adj, size + 1, &mut |cells| {
            let mut w = 0.0;
            let mut edges = Vec::with_capacity(size);
            for (x, &a) in cells.iter().enumerate() {
                for &b in &cells[x + 1..] {
                    if let Some(&(p, q)) = edge_of.get(&(a.min(b), a.max(b))) {
                        w += inst.dist(p, q);
                        edges.push((p, q));
                    }
                }
            }
            debug_assert_eq!(edges.len(), size);
            if w < worst.0 {
                edges.sort_unstable();
                worst = (w, edges);
            }
            seen += 1;
            seen < sample_cap
        });
        let mut entry = AuditEntry::from_margin(name, worst.0 - threshold);
        entry.witness = worst.1;
        entry.note = if seen >= sample_cap {
            format!("{seen} subtrees (capped)")
        } else {
            format!("{seen} subtrees")
        };
        report.push(entry);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_instance, Point};
    use crate::ggmst::approximate_ggmst;
    use crate::graph::{prufer_tree_at, tree_count};
    use crate::oracle::exact_ggmst;
    use std::collections::HashSet;

    fn inst(v: &[(f64, f64)]) -> Instance {
        build_instance(v.iter().map(|&p| Point::from(p)).collect()).unwrap()
    }

    #[test]
    fn constants() {
        let t7 = subtree_threshold(7).unwrap();
        assert!(t7 > 1.93 && (t7 - 1.931_851_65).abs() < 1e-8);
        assert!((subtree_threshold(9).unwrap() - 2.732_050_81).abs() < 1e-8);
        assert_eq!(subtree_threshold(4), Some(1.0));
        assert_eq!(subtree_threshold(8), Some(2.0));
        assert_eq!(subtree_threshold(5), None);
    }

    #[test]
    fn additive_bound_degenerate_and_singletons() {
        let one = inst(&[(0.5, 0.5)]);
        let s = approximate_ggmst(&one);
        let e = verify_additive_bound(&one, &s, &s).unwrap();
        assert!(e.pass);
        assert_eq!(e.margin, Some(0.0));

        let row = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5), (3.5, 0.5)]);
        let s = approximate_ggmst(&row);
        let e = verify_additive_bound(&row, &s, &s).unwrap();
        assert!((e.margin.unwrap() - (SQRT2 * 3.0 - SQRT2)).abs() < 1e-12);
    }

    #[test]
    fn mismatched_instances_rejected() {
        let a = inst(&[(0.5, 0.5), (1.5, 0.5)]);
        let b = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5)]);
        let sa = approximate_ggmst(&a);
        let sb = approximate_ggmst(&b);
        assert!(matches!(
            verify_additive_bound(&b, &sa, &sb),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn lower_bound_cases() {
        let three = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5), (3.5, 0.5)]);
        assert!(
            verify_lower_bound(&three, &approximate_ggmst(&three))
                .unwrap()
                .pass
        );
        // N = 4 on a unit-spaced row, weight 4: 4 ≤ 19
        let row = inst(&[(0.5, 0.5), (1.5, 0.5), (2.5, 0.5), (3.5, 0.5), (4.5, 0.5)]);
        let e = verify_lower_bound(&row, &approximate_ggmst(&row)).unwrap();
        assert_eq!(e.margin, Some(15.0));
    }

    #[test]
    fn esu_enumerates_each_subtree_once() {
        for idx in [0u64, 17, 100, 255] {
            let t = prufer_tree_at(6, idx * tree_count(6) / 256).unwrap();
            let adj: Vec<Vec<usize>> = (0..6).map(|u| t.neighbors(u).to_vec()).collect();
            for size in 1..=6 {
                let mut seen = HashSet::new();
                visit_connected_subsets(&adj, size, &mut |s| {
                    let mut s = s.to_vec();
                    s.sort_unstable();
                    assert!(seen.insert(s), "duplicate");
                    true
                });
                // brute force: connected subsets of the tree have size-1 internal edges
                let mut brute = 0;
                for mask in 0u32..64 {
                    if mask.count_ones() as usize != size {
                        continue;
                    }
                    let inside = |v: usize| mask & (1 << v) != 0;
                    let internal = t
                        .edges()
                        .iter()
                        .filter(|e| inside(e.u) && inside(e.v))
                        .count();
                    if internal == size - 1 {
                        brute += 1;
                    }
                }
                assert_eq!(seen.len(), brute);
            }
        }
    }

    #[test]
    fn esu_stops_at_cap() {
        let adj = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        let mut n = 0;
        visit_connected_subsets(&adj, 2, &mut |_| {
            n += 1;
            n < 2
        });
        assert_eq!(n, 2);
    }

    #[test]
    fn corner_star_is_barely_above_one() {
        let d = 0.01;
        let i = inst(&[
            (1.0 - d, 1.0 - d),
            (1.0 + d, 1.0 - d),
            (1.0 - d, 1.0 + d),
            (1.0 + d, 1.0 + d),
            (2.0 + d, 1.0 + d),
        ]);
        let opt = exact_ggmst(&i, 10).unwrap();
        let r = audit_subtree_lemmas(&i, &opt, &[4], 100_000).unwrap();
        let m = r.entries[0].margin.unwrap();
        assert!(r.passed());
        assert!((0.0..0.1).contains(&m), "margin {m}");
        assert_eq!(r.entries[0].witness.len(), 4);
    }

    #[test]
    fn full_three_by_three_block() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                // pull every point toward the block center
                let x = i as f64
                    + if i == 0 {
                        0.99
                    } else if i == 2 {
                        0.01
                    } else {
                        0.5
                    };
                let y = j as f64
                    + if j == 0 {
                        0.99
                    } else if j == 2 {
                        0.01
                    } else {
                        0.5
                    };
                pts.push((x, y));
            }
        }
        let i = inst(&pts);
        let opt = exact_ggmst(&i, 1).unwrap();
        assert!(opt.weight >= 2.0);
        let r = audit_subtree_lemmas(&i, &opt, &LEMMA_SIZES, 100_000).unwrap();
        assert!(r.passed());
        assert!(
            r.entries[3].margin.is_none(),
            "9 edges requested on an 8-edge tree"
        );
        assert!(r.entries[2].margin.unwrap() >= 0.0);
    }

    #[test]
    fn unknown_size_is_an_error() {
        let i = inst(&[(0.5, 0.5), (1.5, 0.5)]);
        assert!(audit_subtree_lemmas(&i, &approximate_ggmst(&i), &[5], 10).is_err());
    }

    #[test]
    fn csv_shape() {
        let mut r = AuditReport::default();
        r.push(AuditEntry::from_margin("a", 0.5));
        r.push(AuditEntry::skipped("b", "x, y"));
        let csv = r.to_csv();
        assert_eq!(
            csv,
            "check,pass,margin,witness,note\na,true,0.5,,\nb,true,,,x; y\n"
        );
        assert_eq!(r.min_margin(), Some(0.5));
        r.push(AuditEntry::from_margin("c", -1.0));
        assert!(!r.passed());
    }
}
