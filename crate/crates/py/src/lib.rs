//! Python bindings. Build with `maturin develop` from this directory.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ggrid_core::format::{parse_instance, serialize_instance};
use ggrid_core::generate::{generate_instance as core_generate, GenParams};
use ggrid_core::oracle::{self, AuditReport};
use ggrid_core::svg::{render_svg as core_render, Overlay};
use ggrid_core::{build_instance, Error, GgmstSolution, Point, SolverConfig, TspVariant};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } | Error::InfeasibleOracle(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

/// `(check, passed, margin, note)`
type AuditRow = (String, bool, Option<f64>, String);

fn config(epsilon: f64) -> PyResult<SolverConfig> {
    SolverConfig::with_epsilon(epsilon).map_err(to_py)
}

/// Point set partitioned into unit grid cells.
#[pyclass(frozen, module = "ggrid")]
struct Instance(ggrid_core::Instance);

#[pymethods]
impl Instance {
    #[new]
    fn new(points: Vec<(f64, f64)>) -> PyResult<Self> {
        let pts = points.into_iter().map(Point::from).collect();
        build_instance(pts).map(Self).map_err(to_py)
    }

    /// Parses GGRID text.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        parse_instance(text).map(Self).map_err(to_py)
    }

    fn to_text(&self) -> String {
        serialize_instance(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Number of non-empty cells.
    #[getter]
    fn k(&self) -> usize {
        self.0.num_cells()
    }

    #[getter]
    fn points(&self) -> Vec<(f64, f64)> {
        self.0.points().iter().map(|p| (p.x, p.y)).collect()
    }

    /// Cell coordinates in solver order.
    #[getter]
    fn cells(&self) -> Vec<(i64, i64)> {
        self.0.cell_order().iter().map(|c| (c.i, c.j)).collect()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Instance(n={}, k={})", self.0.n(), self.0.num_cells())
    }
}

/// Spanning tree over one chosen point per cell.
#[pyclass(frozen, module = "ggrid")]
struct Tree {
    inner: GgmstSolution,
    #[pyo3(get)]
    provenance: String,
}

#[pymethods]
impl Tree {
    #[getter]
    fn weight(&self) -> f64 {
        self.inner.weight
    }

    /// Chosen point index for each cell.
    #[getter]
    fn chosen(&self) -> Vec<usize> {
        self.inner.chosen.clone()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Tree(weight={}, provenance={:?})",
            self.inner.weight, self.provenance
        )
    }
}

/// Closed tour over one point per cell.
#[pyclass(frozen, module = "ggrid")]
struct Tour {
    inner: ggrid_core::Tour,
    #[pyo3(get)]
    provenance: String,
}

#[pymethods]
impl Tour {
    #[getter]
    fn weight(&self) -> f64 {
        self.inner.weight
    }

    #[getter]
    fn order(&self) -> Vec<usize> {
        self.inner.order.clone()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn __repr__(&self) -> String {
        format!(
            "Tour(weight={}, provenance={:?})",
            self.inner.weight, self.provenance
        )
    }
}

fn tree(inner: GgmstSolution, provenance: &str) -> Tree {
    Tree {
        inner,
        provenance: provenance.to_string(),
    }
}

#[pyfunction]
#[pyo3(signature = (inst, epsilon = 0.5))]
fn solve_ggmst(inst: &Instance, epsilon: f64) -> PyResult<Tree> {
    let (sol, tag) = ggrid_core::solve_ggmst(&inst.0, &config(epsilon)?).map_err(to_py)?;
    Ok(tree(sol, tag.tag()))
}

#[pyfunction]
fn approximate_ggmst(inst: &Instance) -> Tree {
    tree(ggrid_core::ggmst::approximate_ggmst(&inst.0), "approx")
}

#[pyfunction]
#[pyo3(signature = (inst, cap = 1_000_000))]
fn exact_ggmst(inst: &Instance, cap: u64) -> PyResult<Tree> {
    Ok(tree(
        oracle::exact_ggmst(&inst.0, cap).map_err(to_py)?,
        "exact",
    ))
}

#[pyfunction]
#[pyo3(signature = (inst, variant = "christofides", epsilon = 0.5))]
fn solve_ggtsp(inst: &Instance, variant: &str, epsilon: f64) -> PyResult<Tour> {
    let variant: TspVariant = variant.parse().map_err(to_py)?;
    let (t, tag) = ggrid_core::solve_ggtsp(&inst.0, &config(epsilon)?, variant).map_err(to_py)?;
    Ok(Tour {
        inner: t,
        provenance: tag.tag().to_string(),
    })
}

#[pyfunction]
#[pyo3(signature = (inst, cap = 1_000_000))]
fn exact_ggtsp(inst: &Instance, cap: u64) -> PyResult<Tour> {
    Ok(Tour {
        inner: oracle::exact_ggtsp(&inst.0, cap).map_err(to_py)?,
        provenance: "exact".to_string(),
    })
}

/// Seeded random instance; see the `gen` CLI command for the modes.
#[pyfunction]
#[pyo3(signature = (mode = "connected-cells", rows = 3, cols = 5, cells = 8, ppc = (1, 3), seed = 42))]
fn generate(
    mode: &str,
    rows: u32,
    cols: u32,
    cells: u32,
    ppc: (u32, u32),
    seed: u64,
) -> PyResult<Instance> {
    let params = GenParams {
        mode: mode.parse().map_err(to_py)?,
        rows,
        cols,
        ppc,
        cells,
        seed,
    };
    core_generate(&params).map(Instance).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (inst, tree = None, tour = None))]
fn render_svg(inst: &Instance, tree: Option<&Tree>, tour: Option<&Tour>) -> PyResult<String> {
    let overlay = match (tree, tour) {
        (Some(_), Some(_)) => return Err(PyValueError::new_err("pass a tree or a tour, not both")),
        (Some(t), None) => Overlay::Tree(&t.inner),
        (None, Some(t)) => Overlay::Tour(&t.inner),
        (None, None) => Overlay::None,
    };
    Ok(core_render(&inst.0, overlay))
}

/// Bound checks of the approximate tree against the exact optimum, then the
/// subtree lemmas on the optimum. Returns `(check, passed, margin, note)` rows.
#[pyfunction]
#[pyo3(signature = (inst, lemmas = vec![4, 7, 8, 9], sample_cap = 100_000, cap = 1_000_000))]
fn audit(
    inst: &Instance,
    lemmas: Vec<usize>,
    sample_cap: usize,
    cap: u64,
) -> PyResult<Vec<AuditRow>> {
    let i = &inst.0;
    let opt = oracle::exact_ggmst(i, cap).map_err(to_py)?;
    let approx = ggrid_core::ggmst::approximate_ggmst(i);
    let mut r = AuditReport::default();
    r.push(oracle::verify_additive_bound(i, &approx, &opt).map_err(to_py)?);
    r.push(oracle::verify_ratio_bound(i, &approx, &opt).map_err(to_py)?);
    r.push(oracle::verify_lower_bound(i, &opt).map_err(to_py)?);
    r.extend(oracle::audit_subtree_lemmas(i, &opt, &lemmas, sample_cap).map_err(to_py)?);
    Ok(r.entries
        .into_iter()
        .map(|e| (e.name, e.pass, e.margin, e.note))
        .collect())
}

#[pymodule]
fn ggrid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Tree>()?;
    m.add_class::<Tour>()?;
    m.add_function(wrap_pyfunction!(solve_ggmst, m)?)?;
    m.add_function(wrap_pyfunction!(approximate_ggmst, m)?)?;
    m.add_function(wrap_pyfunction!(exact_ggmst, m)?)?;
    m.add_function(wrap_pyfunction!(solve_ggtsp, m)?)?;
    m.add_function(wrap_pyfunction!(exact_ggtsp, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    Ok(())
}
