//! Synthetic corpora and the string-set / cost-matrix file formats.

mod files;
mod generate;

pub use files::{
    format_cost_matrix, format_strings, load_cost_matrix, load_strings, parse_cost_matrix,
    parse_strings, save_cost_matrix, save_strings,
};
pub use generate::{gen_dataset, generate, ChainCodeRecord, Dataset, DatasetKind, DatasetSpec};

use crate::edit::{Alphabet, CostModel};

/// The four-symbol worked example: Σ = {0, 1, 2, 4}, every insertion and
/// deletion costs 2.
pub fn builtin_table1() -> (Alphabet, CostModel) {
    let alphabet = Alphabet::new("0124".chars()).expect("static alphabet");
    let rows = [
        [0.0, 1.0, 2.0, 4.0, 2.0],
        [1.0, 0.0, 1.0, 3.0, 2.0],
        [2.0, 1.0, 0.0, 2.0, 2.0],
        [4.0, 3.0, 2.0, 0.0, 2.0],
        [2.0, 2.0, 2.0, 2.0, 0.0],
    ]
    .map(|r| r.to_vec());
    let model = CostModel::from_rows(alphabet.clone(), &rows).expect("static table");
    (alphabet, model)
}
