//! Exact minimum-weight perfect matching by subset DP.

use crate::error::{Error, Result};

/// A perfect matching over a node list.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    /// Matched pairs, each as `(smaller position, larger position)` mapped
    /// back to the caller's labels, in the order the DP peels them off.
    pub pairs: Vec<(usize, usize)>,
    pub weight: f64,
}

/// Minimum perfect matching of `nodes` under `dist`, in `O(2^m · m)` time and
/// memory for `m = nodes.len()`.
///
/// The lowest unmatched node is always paired first and partners are tried in
/// list order with strict improvement, so ties resolve to the
/// lexicographically smallest pairing.
pub fn min_perfect_matching<F>(nodes: &[usize], dist: F, cap: usize) -> Result<Matching>
where
    F: Fn(usize, usize) -> f64,
{
    let m = nodes.len();
    if m % 2 == 1 {
        return Err(Error::Parity(m));
    }
    if m > cap {
        return Err(Error::CapExceeded {
            what: "matching size",
            value: m as u64,
            cap: cap as u64,
        });
    }
    if m == 0 {
        return Ok(Matching {
            pairs: Vec::new(),
            weight: 0.0,
        });
    }
    let mut w = vec![0.0; m * m];
    for a in 0..m {
        for b in a + 1..m {
            let d = dist(nodes[a], nodes[b]);
            w[a * m + b] = d;
            w[b * m + a] = d;
        }
    }
    let full = (1usize << m) - 1;
    // best[mask]: cheapest perfect matching of the nodes NOT in mask
    let mut best = vec![f64::INFINITY; 1 << m];
    let mut partner = vec![usize::MAX; 1 << m];
    best[full] = 0.0;
    for mask in (0..full).rev() {
        if (m - mask.count_ones() as usize) % 2 == 1 {
            continue;
        }
        let a = (!mask).trailing_zeros() as usize;
        for b in a + 1..m {
            if mask & (1 << b) != 0 {
                continue;
            }
            let cand = w[a * m + b] + best[mask | (1 << a) | (1 << b)];
            if cand < best[mask] {
                best[mask] = cand;
                partner[mask] = b;
            }
        }
    }
    let mut pairs = Vec::with_capacity(m / 2);
    let mut mask = 0usize;
    while mask != full {
        let a = (!mask).trailing_zeros() as usize;
        let b = partner[mask];
        pairs.push((nodes[a], nodes[b]));
        mask |= (1 << a) | (1 << b);
    }
    Ok(Matching {
        pairs,
        weight: best[0],
    })
}
