//! Alphabets, cost models, weighted edit distance and edit scripts.
//!
//! Strings are slices of symbol codes ([`Sym`]); code `i` is the `i`-th
//! symbol of the [`Alphabet`]. The empty symbol ε never appears inside a
//! string. Edit operations carry it implicitly as `None` on the source side
//! (insertion) or target side (deletion), and cost matrices store it as the
//! extra last row and column.

mod alphabet;
mod cost;
pub(crate) mod distance;
mod op;

pub use alphabet::Alphabet;
pub use cost::{validate_cost_matrix, CostModel, Violation};
pub use distance::{
    distance, distance_counted, distance_with_script, distance_with_script_counted,
};
pub use op::{apply_op, apply_script, EditOp, EditScript, OpKind};

/// Symbol code: index into an [`Alphabet`].
pub type Sym = u8;

/// Absolute tolerance used when comparing accumulated real costs.
pub const COST_TOLERANCE: f64 = 1e-9;

pub(crate) fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= COST_TOLERANCE
}
