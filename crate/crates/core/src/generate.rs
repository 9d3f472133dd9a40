//! Seeded random instance generation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{build_instance, CellId, Instance, Point};

/// Coordinates are multiples of this inside a cell, so files stay short.
const QUANTUM: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenMode {
    /// Distinct cells drawn uniformly from the extent.
    UniformBox,
    /// One 8-connected group of cells grown by a random walk.
    ConnectedCells,
    /// Up to three grown blobs; points hug a random corner of their cell.
    Clustered,
}

impl GenMode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::UniformBox => "uniform-box",
            Self::ConnectedCells => "connected-cells",
            Self::Clustered => "clustered",
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-box" => Ok(Self::UniformBox),
            "connected-cells" => Ok(Self::ConnectedCells),
            "clustered" => Ok(Self::Clustered),
            other => Err(Error::InvalidArgument(format!(
                "unknown generation mode {other:?}"
            ))),
        }
    }
}

/// Cells are drawn from `i ∈ 0..cols`, `j ∈ 0..rows`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub mode: GenMode,
    pub rows: u32,
    pub cols: u32,
    /// Inclusive points-per-cell range.
    pub ppc: (u32, u32),
    /// Number of non-empty cells.
    pub cells: u32,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            mode: GenMode::ConnectedCells,
            rows: 3,
            cols: 5,
            ppc: (1, 3),
            cells: 8,
            seed: 42,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Generation(m));
        if self.rows == 0 || self.cols == 0 {
            return fail(format!("extent {}x{} is empty", self.rows, self.cols));
        }
        if self.ppc.0 == 0 || self.ppc.0 > self.ppc.1 {
            return fail(format!(
                "bad points-per-cell range {}..{}",
                self.ppc.0, self.ppc.1
            ));
        }
        let area = u64::from(self.rows) * u64::from(self.cols);
        if self.cells == 0 || u64::from(self.cells) > area {
            return fail(format!(
                "cannot place {} cells in a {}x{} extent",
                self.cells, self.rows, self.cols
            ));
        }
        Ok(())
    }
}

const NEIGHBORS: [(i64, i64); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

fn grow(rng: &mut ChaCha8Rng, p: &GenParams, seeds: usize) -> BTreeSet<CellId> {
    let (cols, rows) = (i64::from(p.cols), i64::from(p.rows));
    let target = p.cells as usize;
    let mut cells = BTreeSet::new();
    let mut visited = Vec::with_capacity(target);
    while visited.len() < seeds.min(target) {
        let c = CellId::new(rng.gen_range(0..cols), rng.gen_range(0..rows));
        if cells.insert(c) {
            visited.push(c);
        }
    }
    while visited.len() < target {
        let from = visited[rng.gen_range(0..visited.len())];
        let (di, dj) = NEIGHBORS[rng.gen_range(0..NEIGHBORS.len())];
        let c = CellId::new(from.i + di, from.j + dj);
        if (0..cols).contains(&c.i) && (0..rows).contains(&c.j) && cells.insert(c) {
            visited.push(c);
        }
    }
    cells
}

fn uniform_cells(rng: &mut ChaCha8Rng, p: &GenParams) -> BTreeSet<CellId> {
    let area = p.rows as usize * p.cols as usize;
    sample(rng, area, p.cells as usize)
        .into_iter()
        .map(|x| CellId::new((x % p.cols as usize) as i64, (x / p.cols as usize) as i64))
        .collect()
}

/// Deterministic in `p`, seed included.
pub fn generate_instance(p: &GenParams) -> Result<Instance> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let cells = match p.mode {
        GenMode::UniformBox => uniform_cells(&mut rng, p),
        GenMode::ConnectedCells => grow(&mut rng, p, 1),
        GenMode::Clustered => grow(&mut rng, p, 3),
    };
    let mut points = Vec::new();
    for c in cells {
        let count = rng.gen_range(p.ppc.0..=p.ppc.1);
        let corner = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        for _ in 0..count {
            let (fx, fy) = match p.mode {
                GenMode::Clustered => {
                    let hug = |rng: &mut ChaCha8Rng, high: bool| {
                        let u = rng.gen_range(0..QUANTUM * 3 / 20);
                        if high {
                            QUANTUM - 1 - u
                        } else {
                            u
                        }
                    };
                    (hug(&mut rng, corner.0), hug(&mut rng, corner.1))
                }
                _ => (rng.gen_range(0..QUANTUM), rng.gen_range(0..QUANTUM)),
            };
            let q = f64::from(QUANTUM);
            points.push(Point::new(
                c.i as f64 + f64::from(fx) / q,
                c.j as f64 + f64::from(fy) / q,
            ));
        }
    }
    build_instance(points)
}

/// True if the cells form one group under side-or-corner adjacency.
pub fn cells_connected(cells: &[CellId]) -> bool {
    let Some(&start) = cells.first() else {
        return true;
    };
    let set: BTreeSet<CellId> = cells.iter().copied().collect();
    let mut seen = BTreeSet::from([start]);
    let mut queue = vec![start];
    while let Some(c) = queue.pop() {
        for (di, dj) in NEIGHBORS {
            let n = CellId::new(c.i + di, c.j + dj);
            if set.contains(&n) && seen.insert(n) {
                queue.push(n);
            }
        }
    }
    seen.len() == set.len()
}
