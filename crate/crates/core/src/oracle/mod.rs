//! Brute-force exact solvers and verifiers for the proved bounds.
//!
//! [`exact_ggmst`] enumerates every one-point-per-cell selection and takes an
//! MST of each. [`exact_ggtsp`] runs a Held-Karp DP over (visited cells,
//! last point) states, which covers every selection at once.

mod audit;

pub use audit::{
    audit_subtree_lemmas, subtree_threshold, verify_additive_bound, verify_bound,
    verify_lower_bound, verify_ratio_bound, visit_connected_subsets, AuditEntry, AuditReport,
    LEMMA_SIZES,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Instance;
use crate::ggmst::GgmstSolution;
use crate::ggtsp::Tour;
use crate::graph::mst;

/// Largest cell count accepted by [`exact_ggtsp`].
pub const MAX_TOUR_CELLS: usize = 12;

fn check_selection_cap(inst: &Instance, cap: u64) -> Result<u64> {
    let count = inst.selection_count();
    if count > cap {
        return Err(Error::InfeasibleOracle(format!(
            "{count} point selections exceed the cap of {cap}"
        )));
    }
    Ok(count)
}

/// Selection number `idx` in lexicographic order (first cell most significant).
fn decode_selection(inst: &Instance, mut idx: u64, out: &mut [usize]) {
    for c in (0..inst.num_cells()).rev() {
        let pts = inst.cell_points(c);
        out[c] = pts[(idx % pts.len() as u64) as usize];
        idx /= pts.len() as u64;
    }
}

fn selection_mst_weight(inst: &Instance, sel: &[usize]) -> f64 {
    mst(sel.len(), |a, b| inst.dist(sel[a], sel[b]))
        .expect("selection is non-empty")
        .weight()
}

/// Optimal GGMST by enumerating every selection. Ties go to the earliest
/// selection in lexicographic order.
pub fn exact_ggmst(inst: &Instance, cap: u64) -> Result<GgmstSolution> {
    let count = check_selection_cap(inst, cap)?;
    let k = inst.num_cells();
    let count = usize::try_from(count).map_err(|_| Error::CapExceeded {
        what: "selections",
        value: count,
        cap,
    })?;
    let (_, best) = (0..count)
        .into_par_iter()
        .with_min_len(64)
        .map_init(
            || vec![0usize; k],
            |sel, idx| {
                decode_selection(inst, idx as u64, sel);
                (selection_mst_weight(inst, sel), idx)
            },
        )
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let mut chosen = vec![0usize; k];
    decode_selection(inst, best as u64, &mut chosen);
    let tree = mst(k, |a, b| inst.dist(chosen[a], chosen[b]))?;
    let edges = tree
        .edges()
        .iter()
        .map(|e| (chosen[e.u], chosen[e.v]))
        .collect();
    Ok(GgmstSolution::from_parts(inst, chosen, edges))
}

/// Estimated work of [`exact_ggtsp`]: `|anchor| · 2^(k−1) · m²` with `m` the
/// number of points outside the anchor cell. Saturates.
pub fn held_karp_work(inst: &Instance) -> u64 {
    let k = inst.num_cells();
    if k > 63 {
        return u64::MAX;
    }
    let anchor = anchor_cell(inst);
    let a = inst.cell_points(anchor).len() as u64;
    let m = (inst.n() - a as usize) as u64;
    a.saturating_mul(1u64 << (k - 1))
        .saturating_mul(m.saturating_mul(m))
}

fn anchor_cell(inst: &Instance) -> usize {
    (0..inst.num_cells())
        .min_by_key(|&c| inst.cell_points(c).len())
        .expect("instance has a cell")
}

/// Optimal GGTSP tour.
///
/// The smallest cell is fixed as the start. For each of its points a
/// Held-Karp DP over (visited cells, last point) finds the cheapest closed
/// tour. The returned order starts in the first cell of the instance.
pub fn exact_ggtsp(inst: &Instance, cap: u64) -> Result<Tour> {
    check_selection_cap(inst, cap)?;
    let k = inst.num_cells();
    if k > MAX_TOUR_CELLS {
        return Err(Error::InfeasibleOracle(format!(
            "{k} cells exceed the exact tour limit of {MAX_TOUR_CELLS}"
        )));
    }
    if k == 1 {
        return Ok(Tour::from_order(inst, vec![inst.cell_points(0)[0]]));
    }
    let anchor = anchor_cell(inst);
    // remaining cells get bits 0..k-1; pts lists (point, bit) in point order
    let others: Vec<usize> = (0..k).filter(|&c| c != anchor).collect();
    let mut bit_of_cell = vec![usize::MAX; k];
    for (b, &c) in others.iter().enumerate() {
        bit_of_cell[c] = b;
    }
    let pts: Vec<(usize, usize)> = others
        .iter()
        .flat_map(|&c| inst.cell_points(c).iter().map(move |&p| (p, c)))
        .map(|(p, c)| (p, bit_of_cell[c]))
        .collect();
    let by_bit: Vec<Vec<usize>> = (0..others.len())
        .map(|b| (0..pts.len()).filter(|&i| pts[i].1 == b).collect())
        .collect();
    let m = pts.len();
    let full = (1usize << others.len()) - 1;

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut cost = vec![f64::INFINITY; (full + 1) * m];
    let mut prev = vec![usize::MAX; (full + 1) * m];
    for &start in inst.cell_points(anchor) {
        cost.fill(f64::INFINITY);
        prev.fill(usize::MAX);
        for (i, &(p, b)) in pts.iter().enumerate() {
            cost[(1 << b) * m + i] = inst.dist(start, p);
        }
        for mask in 1..=full {
            for i in 0..m {
                let here = cost[mask * m + i];
                if !here.is_finite() {
                    continue;
                }
                let p = pts[i].0;
                for (b, members) in by_bit.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        continue;
                    }
                    let next = mask | (1 << b);
                    for &j in members {
                        let cand = here + inst.dist(p, pts[j].0);
                        if cand < cost[next * m + j] {
                            cost[next * m + j] = cand;
                            prev[next * m + j] = i;
                        }
                    }
                }
            }
        }
        let mut end = usize::MAX;
        let mut total = f64::INFINITY;
        for i in 0..m {
            let w = cost[full * m + i] + inst.dist(pts[i].0, start);
            if w < total {
                total = w;
                end = i;
            }
        }
        if best.as_ref().is_none_or(|(w, _)| total < *w) {
            let mut path = Vec::with_capacity(k);
            let (mut mask, mut i) = (full, end);
            while i != usize::MAX {
                path.push(pts[i].0);
                let before = prev[mask * m + i];
                mask &= !(1 << pts[i].1);
                i = before;
            }
            path.push(start);
            path.reverse();
            best = Some((total, path));
        }
    }
    let (_, mut order) = best.expect("anchor cell has a point");
    let first = order
        .iter()
        .position(|&p| inst.cell_of_point(p) == 0)
        .expect("every cell visited");
    order.rotate_left(first);
    Ok(Tour::from_order(inst, order))
}
