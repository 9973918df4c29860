//! Weighted edit distance and approximate median strings.
//!
//! The crate is organised bottom up:
//!
//! * [`edit`] holds alphabets, cost models, the edit distance dynamic program
//!   with canonical traceback, and edit script application.
//! * [`heuristic`] computes per-position statistics of optimal scripts, ranks
//!   candidate perturbations (frequency, frequency × cost and repercussion),
//!   and runs the iterative refinement loop plus an exhaustive sweep baseline.
//! * [`datasets`] generates deterministic synthetic corpora and reads the
//!   string-set and cost-matrix file formats.
//! * [`bench`] orchestrates experiments and writes CSV and SVG output.

pub mod bench;
pub mod counter;
pub mod datasets;
pub mod edit;
mod error;
pub mod heuristic;

pub use counter::{OpCounter, OpCounts};
pub use error::{Error, Result};
