//! Points, grid cells and the distance primitives shared by every solver.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted coordinate magnitude.
pub const MAX_COORD: f64 = 1e9;

/// A point in the plane. The unit length is one grid cell side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |c: f64| c.is_finite() && c.abs() <= MAX_COORD;
        if ok(self.x) && ok(self.y) {
            Ok(())
        } else {
            Err(Error::InvalidPoint {
                x: self.x,
                y: self.y,
                bound: MAX_COORD,
            })
        }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

/// Integer coordinates of a unit grid cell `[i, i+1) × [j, j+1)`.
///
/// Ordering is lexicographic on `(i, j)`, which fixes the cell order of every
/// [`Instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub i: i64,
    pub j: i64,
}

impl CellId {
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    /// True if the two cells share a side or a corner.
    pub fn touches(&self, other: &CellId) -> bool {
        self != other && (self.i - other.i).abs() <= 1 && (self.j - other.j).abs() <= 1
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Cell containing `p` under the half-open rule: border points belong to the
/// cell on their right / above.
pub fn cell_of(p: Point) -> Result<CellId> {
    p.validate()?;
    Ok(CellId::new(p.x.floor() as i64, p.y.floor() as i64))
}

/// Euclidean distance.
#[inline]
pub fn euclid(p: Point, q: Point) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    (dx * dx + dy * dy).sqrt()
}

/// A point set partitioned into its non-empty grid cells.
///
/// Cells are addressed either by [`CellId`] or by their position in
/// [`Instance::cell_order`] ("cell index"). Point lists inside a cell are in
/// ascending point-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    points: Vec<Point>,
    cell_order: Vec<CellId>,
    members: Vec<Vec<usize>>,
    cell_index: BTreeMap<CellId, usize>,
    point_cell: Vec<usize>,
}

/// Groups `points` by cell.
pub fn build_instance(points: Vec<Point>) -> Result<Instance> {
    if points.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let mut grouped: BTreeMap<CellId, Vec<usize>> = BTreeMap::new();
    for (idx, p) in points.iter().enumerate() {
        grouped.entry(cell_of(*p)?).or_default().push(idx);
    }
    let mut cell_order = Vec::with_capacity(grouped.len());
    let mut members = Vec::with_capacity(grouped.len());
    let mut cell_index = BTreeMap::new();
    let mut point_cell = vec![0; points.len()];
    for (pos, (cell, idxs)) in grouped.into_iter().enumerate() {
        for &p in &idxs {
            point_cell[p] = pos;
        }
        cell_index.insert(cell, pos);
        cell_order.push(cell);
        members.push(idxs);
    }
    Ok(Instance {
        points,
        cell_order,
        members,
        cell_index,
        point_cell,
    })
}

impl Instance {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> Point {
        self.points[idx]
    }

    /// Number of points, `n`.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Number of non-empty cells, `N + 1`.
    pub fn num_cells(&self) -> usize {
        self.cell_order.len()
    }

    /// Edge count of every feasible tree.
    pub fn big_n(&self) -> usize {
        self.cell_order.len() - 1
    }

    pub fn cell_order(&self) -> &[CellId] {
        &self.cell_order
    }

    pub fn cell_id(&self, cell: usize) -> CellId {
        self.cell_order[cell]
    }

    /// Position of `id` in the cell order, if the cell is non-empty.
    pub fn cell_index(&self, id: CellId) -> Option<usize> {
        self.cell_index.get(&id).copied()
    }

    /// Point indices inside the cell at position `cell`.
    pub fn cell_points(&self, cell: usize) -> &[usize] {
        &self.members[cell]
    }

    /// Points inside the cell `id`; empty slice when the cell is empty.
    pub fn points_in(&self, id: CellId) -> &[usize] {
        self.cell_index(id).map_or(&[], |c| &self.members[c])
    }

    /// Cell index of point `idx`.
    pub fn cell_of_point(&self, idx: usize) -> usize {
        self.point_cell[idx]
    }

    pub fn dist(&self, p: usize, q: usize) -> f64 {
        euclid(self.points[p], self.points[q])
    }

    /// Product of cell sizes, i.e. the number of one-point-per-cell
    /// selections. Saturates at `u64::MAX`.
    pub fn selection_count(&self) -> u64 {
        self.members
            .iter()
            .fold(1u64, |acc, m| acc.saturating_mul(m.len() as u64))
    }

    /// Shortest edges between every pair of cells, indexed by cell index.
    pub fn cell_distances(&self) -> CellDistances {
        let k = self.num_cells();
        let mut edges = vec![None; k * k];
        for a in 0..k {
            for b in a + 1..k {
                let e = self.closest_pair(a, b);
                edges[a * k + b] = Some(e);
                edges[b * k + a] = Some(CellEdge {
                    weight: e.weight,
                    p: e.q,
                    q: e.p,
                });
            }
        }
        CellDistances { k, edges }
    }

    fn closest_pair(&self, a: usize, b: usize) -> CellEdge {
        let mut best = CellEdge {
            weight: f64::INFINITY,
            p: usize::MAX,
            q: usize::MAX,
        };
        for &p in &self.members[a] {
            for &q in &self.members[b] {
                let w = self.dist(p, q);
                if w < best.weight {
                    best = CellEdge { weight: w, p, q };
                }
            }
        }
        best
    }
}

/// Shortest edge between two cells: `p` lies in the first cell, `q` in the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellEdge {
    pub weight: f64,
    pub p: usize,
    pub q: usize,
}

/// Dense table of [`CellEdge`]s between all cell pairs.
#[derive(Debug, Clone)]
pub struct CellDistances {
    k: usize,
    edges: Vec<Option<CellEdge>>,
}

impl CellDistances {
    pub fn edge(&self, a: usize, b: usize) -> CellEdge {
        self.edges[a * self.k + b].expect("no edge between a cell and itself")
    }

    pub fn weight(&self, a: usize, b: usize) -> f64 {
        if a == b {
            0.0
        } else {
            self.edge(a, b).weight
        }
    }
}

/// Shortest edge between cells `a` and `b`. Ties go to the lowest
/// `(p, q)` point-index pair.
pub fn min_cell_edge(inst: &Instance, a: CellId, b: CellId) -> Result<CellEdge> {
    if a == b {
        return Err(Error::InvalidArgument(format!("identical cells {a}")));
    }
    let lookup = |c: CellId| {
        inst.cell_index(c)
            .ok_or_else(|| Error::InvalidArgument(format!("cell {c} is empty")))
    };
    let (ai, bi) = (lookup(a)?, lookup(b)?);
    Ok(inst.closest_pair(ai, bi))
}
