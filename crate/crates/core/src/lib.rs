//! Solvers for the generalized minimum spanning tree (GGMST) and generalized
//! travelling salesman (GGTSP) problems where clusters are the non-empty
//! 1×1 cells of the integer grid.
//!
//! The crate provides
//! - the cell-MST + median-merge approximation for GGMST, the dynamic program
//!   that realizes a fixed cell tree optimally, and the ε-wrapper that picks
//!   between them ([`ggmst`]);
//! - double-tree and Christofides-style tours for GGTSP ([`ggtsp`]);
//! - brute-force exact solvers and bound verifiers ([`oracle`]);
//! - instance files, random generation, benchmarking and SVG output.

pub mod bench;
pub mod error;
pub mod format;
pub mod generate;
pub mod geometry;
pub mod ggmst;
pub mod ggtsp;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{
    build_instance, cell_of, euclid, min_cell_edge, CellEdge, CellId, Instance, Point,
};
pub use ggmst::{solve_ggmst, CellTree, GgmstSolution, MstProvenance, SolverConfig};
pub use ggtsp::{solve_ggtsp, Tour, TspProvenance, TspVariant};

/// Absolute tolerance used by every bound check.
pub const TOLERANCE: f64 = 1e-9;
