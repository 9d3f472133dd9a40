//! Benchmark harness: runs solvers over a suite of instances, optionally
//! against the exact oracle, and writes one CSV row per (instance, solver).
//!
//! Suites are TOML:
//!
//! ```toml
//! solvers = ["ggmst-approx", "ggmst", "ggtsp-double-tree", "ggtsp-christofides"]
//! epsilon = 0.5
//!
//! [[generate]]
//! mode = "connected-cells"
//! rows = 4
//! cols = 4
//! cells = [3, 8]
//! ppc = [1, 3]
//! count = 50
//! seed = 1
//!
//! [[file]]
//! path = "examples/fig1.ggrid"
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::format::parse_instance;
use crate::generate::{generate_instance, GenMode, GenParams};
use crate::geometry::Instance;
use crate::ggmst::{approximate_ggmst, solve_ggmst, SolverConfig};
use crate::ggtsp::{christofides_tour, double_tree_tour, solve_ggtsp, TspProvenance, TspVariant};
use crate::oracle::{self, held_karp_work, verify_bound, AuditEntry, MAX_TOUR_CELLS};
use crate::TOLERANCE;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Fixed CSV header.
pub const CSV_HEADER: [&str; 10] = [
    "instance",
    "n",
    "k",
    "N",
    "solver",
    "weight",
    "opt_weight",
    "ratio",
    "ms",
    "min_margin",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Solver {
    /// Cell MST + median merge.
    GgmstApprox,
    /// ε-wrapper.
    Ggmst,
    /// Double-tree tour over the approximate tree.
    GgtspDoubleTree,
    /// Christofides-style tour over the approximate tree.
    GgtspChristofides,
    /// Exact for small instances, Christofides otherwise.
    Ggtsp,
}

impl Solver {
    pub const ALL: [Solver; 5] = [
        Self::GgmstApprox,
        Self::Ggmst,
        Self::GgtspDoubleTree,
        Self::GgtspChristofides,
        Self::Ggtsp,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::GgmstApprox => "ggmst-approx",
            Self::Ggmst => "ggmst",
            Self::GgtspDoubleTree => "ggtsp-double-tree",
            Self::GgtspChristofides => "ggtsp-christofides",
            Self::Ggtsp => "ggtsp",
        }
    }

    pub fn is_tour(&self) -> bool {
        matches!(
            self,
            Self::GgtspDoubleTree | Self::GgtspChristofides | Self::Ggtsp
        )
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown solver {s:?}")))
    }
}

impl<'de> Deserialize<'de> for Solver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GenerateGroup {
    pub mode: String,
    pub rows: u32,
    pub cols: u32,
    /// Inclusive range of non-empty cell counts.
    pub cells: (u32, u32),
    pub ppc: (u32, u32),
    pub count: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileEntry {
    pub path: PathBuf,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_solvers")]
    pub solvers: Vec<Solver>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub generate: Vec<GenerateGroup>,
    #[serde(default)]
    pub file: Vec<FileEntry>,
}

fn default_solvers() -> Vec<Solver> {
    Solver::ALL.to_vec()
}

fn default_epsilon() -> f64 {
    SolverConfig::default().epsilon
}

impl Default for SuiteConfig {
    /// Forty small connected instances.
    fn default() -> Self {
        Self {
            solvers: default_solvers(),
            epsilon: default_epsilon(),
            generate: vec![GenerateGroup {
                mode: GenMode::ConnectedCells.name().to_string(),
                rows: 4,
                cols: 4,
                cells: (3, 8),
                ppc: (1, 3),
                count: 40,
                seed: 1,
            }],
            file: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidArgument(format!("suite config: {e}")))
    }

    /// Materializes every instance, in config order. Relative file paths
    /// resolve against `base`.
    pub fn instances(&self, base: &Path) -> Result<Vec<(String, Instance)>> {
        let mut out = Vec::new();
        for g in &self.generate {
            let mode: GenMode = g.mode.parse()?;
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            for idx in 0..g.count {
                let params = GenParams {
                    mode,
                    rows: g.rows,
                    cols: g.cols,
                    ppc: g.ppc,
                    cells: rng.gen_range(g.cells.0..=g.cells.1.max(g.cells.0)),
                    seed: rng.gen(),
                };
                out.push((
                    format!("{}-s{}-{}", mode, g.seed, idx),
                    generate_instance(&params)?,
                ));
            }
        }
        for f in &self.file {
            let path = base.join(&f.path);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            out.push((f.path.display().to_string(), parse_instance(&text)?));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BenchOptions {
    pub oracle: bool,
    /// Record wall-clock time; off by default so reports are reproducible.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleWeight {
    NotRequested,
    Skipped,
    Value(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub k: usize,
    pub big_n: usize,
    /// Solver name with the provenance tag in brackets.
    pub solver: String,
    pub weight: f64,
    pub opt: OracleWeight,
    pub ms: Option<f64>,
    pub audits: Vec<AuditEntry>,
}

impl BenchRecord {
    pub fn ratio(&self) -> Option<f64> {
        match self.opt {
            OracleWeight::Value(opt) if opt > 0.0 => Some(self.weight / opt),
            OracleWeight::Value(_) if self.weight <= TOLERANCE => Some(1.0),
            OracleWeight::Value(_) => Some(f64::INFINITY),
            _ => None,
        }
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.audits.iter().filter_map(|a| a.margin).reduce(f64::min)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub solvers: Vec<Solver>,
}

impl BenchReport {
    pub fn audits_passed(&self) -> bool {
        self.records.iter().all(|r| r.audits.iter().all(|a| a.pass))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).unwrap();
        let num = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.records {
            let opt = match r.opt {
                OracleWeight::NotRequested => String::new(),
                OracleWeight::Skipped => "oracle-skipped".to_string(),
                OracleWeight::Value(v) => v.to_string(),
            };
            w.write_record([
                r.instance.clone(),
                r.n.to_string(),
                r.k.to_string(),
                r.big_n.to_string(),
                r.solver.clone(),
                r.weight.to_string(),
                opt,
                num(r.ratio()),
                num(r.ms),
                num(r.min_margin()),
            ])
            .unwrap();
        }
        if !self.records.is_empty() {
            for s in &self.solvers {
                let prefix = format!("{}[", s.name());
                let rows: Vec<&BenchRecord> = self
                    .records
                    .iter()
                    .filter(|r| r.solver.starts_with(&prefix))
                    .collect();
                let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio()).collect();
                let max = ratios.iter().copied().reduce(f64::max);
                let mean =
                    (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);
                let margin = rows.iter().filter_map(|r| r.min_margin()).reduce(f64::min);
                for (label, ratio) in [("summary-max", max), ("summary-mean", mean)] {
                    w.write_record([
                        label.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        s.name().to_string(),
                        String::new(),
                        String::new(),
                        num(ratio),
                        String::new(),
                        num(margin),
                    ])
                    .unwrap();
                }
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

struct Oracles {
    mst: OracleWeight,
    tsp: OracleWeight,
}

fn oracles(
    inst: &Instance,
    cfg: &SolverConfig,
    wanted: bool,
    need_mst: bool,
    need_tsp: bool,
) -> Oracles {
    if !wanted {
        return Oracles {
            mst: OracleWeight::NotRequested,
            tsp: OracleWeight::NotRequested,
        };
    }
    let mst = if need_mst {
        match oracle::exact_ggmst(inst, cfg.exact_fallback_cap) {
            Ok(s) => OracleWeight::Value(s.weight),
            Err(_) => OracleWeight::Skipped,
        }
    } else {
        OracleWeight::NotRequested
    };
    let tsp_ok =
        inst.num_cells() <= MAX_TOUR_CELLS && held_karp_work(inst) <= cfg.held_karp_work_cap;
    let tsp = match (need_tsp, tsp_ok) {
        (false, _) => OracleWeight::NotRequested,
        (true, false) => OracleWeight::Skipped,
        (true, true) => match oracle::exact_ggtsp(inst, cfg.exact_fallback_cap) {
            Ok(t) => OracleWeight::Value(t.weight),
            Err(_) => OracleWeight::Skipped,
        },
    };
    Oracles { mst, tsp }
}

fn run_solver(
    id: &str,
    inst: &Instance,
    solver: Solver,
    cfg: &SolverConfig,
    ora: &Oracles,
    timing: bool,
) -> Result<BenchRecord> {
    let start = Instant::now();
    let mut audits = Vec::new();
    let (weight, tag) = match solver {
        Solver::GgmstApprox => (approximate_ggmst(inst), "approx".to_string()),
        Solver::Ggmst => {
            let (s, tag) = solve_ggmst(inst, cfg)?;
            (s, tag.tag().to_string())
        }
        Solver::GgtspDoubleTree => {
            let tree = approximate_ggmst(inst);
            let tour = double_tree_tour(inst, &tree);
            audits.push(verify_bound(
                "double-tree-vs-tree",
                tour.weight,
                tree.weight,
                2.0,
                0.0,
            ));
            return finish(
                id,
                inst,
                solver,
                "approx",
                tour.weight,
                start,
                timing,
                audits,
                ora,
            );
        }
        Solver::GgtspChristofides => {
            let (tour, tag) = christofides_tour(inst, cfg)?;
            return finish(
                id,
                inst,
                solver,
                tag.tag(),
                tour.weight,
                start,
                timing,
                audits,
                ora,
            );
        }
        Solver::Ggtsp => {
            let (tour, tag) = solve_ggtsp(inst, cfg, TspVariant::Christofides)?;
            return finish(
                id,
                inst,
                solver,
                tag.tag(),
                tour.weight,
                start,
                timing,
                audits,
                ora,
            );
        }
    }
    .pipe(|(s, tag)| {
        audits.push(oracle::verify_lower_bound(inst, &s).expect("solver output is feasible"));
        (s.weight, tag)
    });
    finish(id, inst, solver, &tag, weight, start, timing, audits, ora)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    id: &str,
    inst: &Instance,
    solver: Solver,
    tag: &str,
    weight: f64,
    start: Instant,
    timing: bool,
    mut audits: Vec<AuditEntry>,
    ora: &Oracles,
) -> Result<BenchRecord> {
    let ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let opt = if solver.is_tour() {
        ora.tsp.clone()
    } else {
        ora.mst.clone()
    };
    if let OracleWeight::Value(o) = opt {
        match solver {
            Solver::GgmstApprox | Solver::Ggmst => {
                let n = inst.big_n() as f64;
                if inst.big_n() > 0 {
                    audits.push(verify_bound(
                        "additive-bound",
                        weight,
                        o,
                        1.0,
                        SQRT2 * n - SQRT2,
                    ));
                }
                audits.push(verify_bound(
                    "ratio-bound",
                    weight,
                    o,
                    1.0 + 4.0 * SQRT2,
                    2.0 * SQRT2,
                ));
            }
            Solver::GgtspDoubleTree => {
                audits.push(verify_bound(
                    "double-tree-ratio",
                    weight,
                    o,
                    2.0 + 8.0 * SQRT2,
                    4.0 * SQRT2,
                ));
            }
            Solver::GgtspChristofides | Solver::Ggtsp => {
                let (name, f, a) = if tag == TspProvenance::DoubleTreeFallback.tag() {
                    ("double-tree-ratio", 2.0 + 8.0 * SQRT2, 4.0 * SQRT2)
                } else {
                    ("christofides-ratio", 1.5 + 8.0 * SQRT2, 5.0 * SQRT2)
                };
                audits.push(verify_bound(name, weight, o, f, a));
            }
        }
    }
    Ok(BenchRecord {
        instance: id.to_string(),
        n: inst.n(),
        k: inst.num_cells(),
        big_n: inst.big_n(),
        solver: format!("{}[{}]", solver.name(), tag),
        weight,
        opt,
        ms,
        audits,
    })
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}

impl<T> Pipe for T {}

/// Runs every solver on every instance. Instances are processed in parallel;
/// records come back in suite order.
pub fn run_benchmark(
    instances: &[(String, Instance)],
    solvers: &[Solver],
    cfg: &SolverConfig,
    opts: BenchOptions,
) -> Result<BenchReport> {
    cfg.validate()?;
    let need_mst = solvers.iter().any(|s| !s.is_tour());
    let need_tsp = solvers.iter().any(|s| s.is_tour());
    let per_instance: Vec<Result<Vec<BenchRecord>>> = instances
        .par_iter()
        .map(|(id, inst)| {
            let ora = oracles(inst, cfg, opts.oracle, need_mst, need_tsp);
            solvers
                .iter()
                .map(|&s| run_solver(id, inst, s, cfg, &ora, opts.timing))
                .collect()
        })
        .collect();
    let mut records = Vec::new();
    for r in per_instance {
        records.extend(r?);
    }
    Ok(BenchReport {
        records,
        solvers: solvers.to_vec(),
    })
}
