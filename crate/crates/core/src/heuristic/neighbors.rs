//! Sums of distances for single-operation neighbours of a candidate.
//!
//! Any alignment of `xy` against `t` splits `t` into a part aligned with `x`
//! and a part aligned with `y`, so `d(xy, t) = min_l d(x, t[..l]) + d(y, t[l..])`.
//! With prefix rows `F[i][l] = d(M[..i], t[..l])` and suffix rows
//! `B[i][l] = d(M[i..], t[l..])` kept per member, the distance from a
//! neighbour of `M` to `t` costs one new DP row and a minimum over `l`
//! instead of a full matrix. The values are exact, not estimates.

use super::set::StringSet;
use crate::edit::{CostModel, EditOp, Sym};
use crate::OpCounter;

struct Tables {
    width: usize,
    prefix: Vec<f64>,
    suffix: Vec<f64>,
}

pub(crate) struct Neighbors<'a> {
    candidate: &'a [Sym],
    set: &'a StringSet,
    model: &'a CostModel,
    tables: Vec<Tables>,
    row: Vec<f64>,
}

impl<'a> Neighbors<'a> {
    pub(crate) fn new(
        candidate: &'a [Sym],
        set: &'a StringSet,
        model: &'a CostModel,
        counter: &OpCounter,
    ) -> Self {
        let n = candidate.len();
        let tables = set
            .members()
            .iter()
            .map(|member| {
                let t = &member.seq;
                let w = t.len() + 1;
                counter.add_cells((2 * (n + 1) * w) as u64);
                let mut prefix = vec![0.0; (n + 1) * w];
                for l in 1..w {
                    prefix[l] = prefix[l - 1] + model.ins(t[l - 1]);
                }
                for i in 1..=n {
                    let a = candidate[i - 1];
                    let (done, row) = prefix.split_at_mut(i * w);
                    step(&done[(i - 1) * w..], &mut row[..w], a, t, model);
                }
                let mut suffix = vec![0.0; (n + 1) * w];
                let base = n * w;
                for l in (0..w - 1).rev() {
                    suffix[base + l] = suffix[base + l + 1] + model.ins(t[l]);
                }
                for i in (0..n).rev() {
                    let a = candidate[i];
                    let del = model.del(a);
                    let (row, done) = suffix.split_at_mut((i + 1) * w);
                    let next = &done[..w];
                    let row = &mut row[i * w..];
                    row[w - 1] = next[w - 1] + del;
                    for l in (0..w - 1).rev() {
                        let diag = next[l + 1] + model.sub(a, t[l]);
                        let d = next[l] + del;
                        let ins = row[l + 1] + model.ins(t[l]);
                        row[l] = diag.min(d).min(ins);
                    }
                }
                Tables {
                    width: w,
                    prefix,
                    suffix,
                }
            })
            .collect();
        Neighbors {
            candidate,
            set,
            model,
            tables,
            row: Vec::new(),
        }
    }

    /// Sum of distances from `apply_op(candidate, op)` to every member.
    pub(crate) fn sum(&mut self, op: &EditOp, counter: &OpCounter) -> f64 {
        debug_assert!(match op {
            EditOp::Insertion { position, .. } => *position <= self.candidate.len(),
            _ => op.position() < self.candidate.len(),
        });
        let mut total = 0.0;
        for (member, tab) in self.set.members().iter().zip(&self.tables) {
            let w = tab.width;
            let t = &member.seq;
            let (left, right, inserted) = match *op {
                EditOp::Substitution { position, to, .. } => (position, position + 1, Some(to)),
                EditOp::Deletion { position, .. } => (position, position + 1, None),
                EditOp::Insertion { position, to } => (position, position, Some(to)),
            };
            let suffix = &tab.suffix[right * w..(right + 1) * w];
            let d = match inserted {
                Some(x) => {
                    self.row.resize(w, 0.0);
                    step(
                        &tab.prefix[left * w..(left + 1) * w],
                        &mut self.row,
                        x,
                        t,
                        self.model,
                    );
                    counter.add_distance((2 * w) as u64);
                    min_split(&self.row, suffix)
                }
                None => {
                    counter.add_distance(w as u64);
                    min_split(&tab.prefix[left * w..(left + 1) * w], suffix)
                }
            };
            total += d;
        }
        total
    }
}

// One DP row: `prev` holds d(x, t[..l]) and `row` receives d(x a, t[..l]).
fn step(prev: &[f64], row: &mut [f64], a: Sym, t: &[Sym], model: &CostModel) {
    let del = model.del(a);
    row[0] = prev[0] + del;
    for l in 1..row.len() {
        let diag = prev[l - 1] + model.sub(a, t[l - 1]);
        let d = prev[l] + del;
        let ins = row[l - 1] + model.ins(t[l - 1]);
        row[l] = diag.min(d).min(ins);
    }
}

fn min_split(prefix: &[f64], suffix: &[f64]) -> f64 {
    prefix
        .iter()
        .zip(suffix)
        .map(|(a, b)| a + b)
        .fold(f64::INFINITY, f64::min)
}
