//! Exact counting of dot-product chains in finite point sets, the extremal
//! configurations that realize many of them, the point-set statistics the
//! known upper bounds depend on, and tools to compare measured growth
//! against those bounds.

pub mod bounds;
pub mod chains;
pub mod cli;
pub mod constructions;
mod decimal;
pub mod error;
pub mod format;
mod frame;
pub mod geometry;
pub mod pointset;
pub mod stats;

pub use chains::{
    count_chains, count_chains_distinct, count_chains_dp, count_chains_pinned,
    count_pairs_with_dot, enumerate_chains, CountMode, CountReport, Enumeration,
};
pub use error::{Error, Result};
pub use geometry::{
    alpha_line, canonical_line, dot, intersect_alpha_lines, same_radial_line, ChainType, LineKey,
    Point, Scalar,
};
pub use pointset::{PointSet, Provenance};
