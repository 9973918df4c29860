use std::time::Instant;

use super::neighbors::Neighbors;
use super::refine::{elapsed_ms, Refinement, RefinementTrace, TraceEntry};
use super::set::{sum_unchecked, StringSet};
use crate::edit::{apply_op, CostModel, EditOp, OpKind, Sym, COST_TOLERANCE};
use crate::{OpCounter, Result};

/// Exhaustive position sweep baseline.
///
/// Cycles through substitutions, deletions and insertions. For the current
/// family every position × symbol is tried and the candidate moves to the
/// best strictly improving result. Stops once all three families in a row
/// fail to improve. The trace has one entry per accepted move plus a final
/// entry.
pub fn hinarejos_sweep(
    set: &StringSet,
    init: &[Sym],
    model: &CostModel,
    counter: &OpCounter,
) -> Result<Refinement> {
    set.check_compatible(model)?;
    set.alphabet().check(init)?;
    let start = Instant::now();
    let families = [OpKind::Substitution, OpKind::Deletion, OpKind::Insertion];
    let n_symbols = set.alphabet().len() as Sym;

    let mut current = init.to_vec();
    let mut sum = sum_unchecked(&current, set, model, counter);
    let mut entries = Vec::new();
    let mut tested = 0usize;
    let mut idle = 0;
    let mut family = 0;

    while idle < families.len() {
        let mut best: Option<(EditOp, f64)> = None;
        let ops = family_ops(families[family], &current, n_symbols);
        if !ops.is_empty() {
            let mut neighbors = Neighbors::new(&current, set, model, counter);
            for op in ops {
                tested += 1;
                let s = neighbors.sum(&op, counter);
                if s < sum - COST_TOLERANCE
                    && best.as_ref().is_none_or(|(_, b)| s < *b - COST_TOLERANCE)
                {
                    best = Some((op, s));
                }
            }
        }
        match best {
            Some((op, s)) => {
                let next = apply_op(&current, &op)?;
                entries.push(TraceEntry {
                    candidate: current,
                    sum,
                    ops_dequeued: tested,
                    accepted: Some(op),
                    counts: counter.snapshot(),
                    elapsed_ms: elapsed_ms(start),
                });
                tested = 0;
                current = next;
                sum = s;
                idle = 0;
            }
            None => idle += 1,
        }
        family = (family + 1) % families.len();
    }

    entries.push(TraceEntry {
        candidate: current.clone(),
        sum,
        ops_dequeued: tested,
        accepted: None,
        counts: counter.snapshot(),
        elapsed_ms: elapsed_ms(start),
    });
    Ok(Refinement {
        median: current,
        sum,
        trace: RefinementTrace { entries },
    })
}

fn family_ops(kind: OpKind, s: &[Sym], n_symbols: Sym) -> Vec<EditOp> {
    match kind {
        OpKind::Substitution => s
            .iter()
            .enumerate()
            .flat_map(|(position, &from)| {
                (0..n_symbols)
                    .filter(move |&to| to != from)
                    .map(move |to| EditOp::Substitution { position, from, to })
            })
            .collect(),
        OpKind::Deletion => s
            .iter()
            .enumerate()
            .map(|(position, &from)| EditOp::Deletion { position, from })
            .collect(),
        OpKind::Insertion => (0..=s.len())
            .flat_map(|position| (0..n_symbols).map(move |to| EditOp::Insertion { position, to }))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::builtin_table1;
    use crate::edit::Alphabet;

    #[test]
    fn worked_example() {
        let (alphabet, model) = builtin_table1();
        let set = StringSet::from_strs(alphabet.clone(), &["0", "1", "4"]).unwrap();
        let r = hinarejos_sweep(
            &set,
            &alphabet.encode("2").unwrap(),
            &model,
            &OpCounter::new(),
        )
        .unwrap();
        assert_eq!(alphabet.decode(&r.median), "1");
        assert_eq!(r.sum, 4.0);
    }

    #[test]
    fn singleton() {
        let (alphabet, model) = builtin_table1();
        let set = StringSet::from_strs(alphabet.clone(), &["0241"]).unwrap();
        let r = hinarejos_sweep(&set, &set.members()[0].seq, &model, &OpCounter::new()).unwrap();
        assert_eq!(r.median, set.members()[0].seq);
        assert_eq!(r.trace.entries.len(), 1);
    }

    #[test]
    fn binary_pair_reaches_optimum() {
        let alphabet = Alphabet::numbered(2).unwrap();
        let model = CostModel::unit(alphabet.clone());
        let set = StringSet::from_strs(alphabet.clone(), &["00", "01"]).unwrap();
        let r = hinarejos_sweep(
            &set,
            &alphabet.encode("11").unwrap(),
            &model,
            &OpCounter::new(),
        )
        .unwrap();
        assert_eq!(r.sum, 1.0);
        assert!(["00", "01"].contains(&alphabet.decode(&r.median).as_str()));
    }
}
