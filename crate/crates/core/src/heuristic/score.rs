use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::stats::{OpKey, PositionStats};
use crate::edit::{CostModel, EditOp, OpKind, Sym, COST_TOLERANCE};
use crate::{Error, OpCounter, Result};

/// Operation ranking heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scorer {
    /// Number of members whose optimal script contains the operation.
    Frequency,
    /// ω(op) × that number.
    #[serde(alias = "freqcost")]
    FrequencyCost,
    /// Direct gain plus the estimated effect on members demanding a
    /// competing operation at the same position.
    Repercussion,
}

impl Scorer {
    pub fn name(self) -> &'static str {
        match self {
            Scorer::Frequency => "frequency",
            Scorer::FrequencyCost => "frequency_cost",
            Scorer::Repercussion => "repercussion",
        }
    }
}

impl std::fmt::Display for Scorer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scorer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frequency" | "freq" => Ok(Scorer::Frequency),
            "frequency_cost" | "freqcost" | "frequency-cost" => Ok(Scorer::FrequencyCost),
            "repercussion" | "rep" => Ok(Scorer::Repercussion),
            other => Err(Error::Input(format!("unknown scorer {other:?}"))),
        }
    }
}

/// A candidate perturbation with its score breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredOp {
    pub op: EditOp,
    /// ω(op) × |supporters|.
    pub direct_gain: f64,
    pub indirect_delta: f64,
    pub total_score: f64,
    /// Members whose optimal script contains `op`.
    pub supporters: Vec<usize>,
    /// Other members whose distance provably does not grow when `op` is applied.
    pub lemma_supporters: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreOptions {
    /// Credit deletions with the effect on members substituting the deleted symbol.
    pub deletion_repercussion: bool,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            deletion_repercussion: true,
        }
    }
}

fn plain(
    stats: &PositionStats,
    model: &CostModel,
    weight: impl Fn(&EditOp, usize) -> f64,
) -> Vec<ScoredOp> {
    let mut out: Vec<ScoredOp> = stats
        .iter()
        .map(|(key, ids)| {
            let op = stats.op(key);
            ScoredOp {
                op,
                direct_gain: op.cost(model) * ids.len() as f64,
                indirect_delta: 0.0,
                total_score: weight(&op, ids.len()),
                supporters: ids.to_vec(),
                lemma_supporters: Vec::new(),
            }
        })
        .collect();
    rank(&mut out);
    out
}

/// Scores every observed operation by its number of supporters.
pub fn score_frequency(stats: &PositionStats, model: &CostModel) -> Vec<ScoredOp> {
    plain(stats, model, |_, n| n as f64)
}

/// Scores every observed operation by ω(op) × supporters.
pub fn score_frequency_cost(stats: &PositionStats, model: &CostModel) -> Vec<ScoredOp> {
    plain(stats, model, |op, n| op.cost(model) * n as f64)
}

/// Whether applying `applied` = (a → b) cannot increase the distance to a
/// member whose script demands `other` = (a → c) at the same position:
/// ω(b → c) ≤ ω(a → c).
pub fn lemma1_holds(applied: &EditOp, other: &EditOp, model: &CostModel) -> Result<bool> {
    if applied.kind() != other.kind() {
        return Err(Error::InvalidOp(format!(
            "operations differ in kind: {} vs {}",
            applied.kind().name(),
            other.kind().name()
        )));
    }
    if applied.position() != other.position() || applied.from() != other.from() {
        return Err(Error::InvalidOp(format!(
            "operations address different positions: {applied:?} vs {other:?}"
        )));
    }
    Ok(lemma_bound(model, applied.to(), applied.from(), other.to()))
}

fn lemma_bound(
    model: &CostModel,
    replacement: Option<Sym>,
    original: Option<Sym>,
    wanted: Option<Sym>,
) -> bool {
    model.cost(replacement, wanted) <= model.cost(original, wanted) + COST_TOLERANCE
}

/// Repercussion scores.
///
/// For (a → b) at position j, every member demanding a same-kind (a → c)
/// with c ≠ b at j contributes ω(a → c) − ω(b → c): after the change it can
/// reach its target with (b → c) instead. With
/// [`ScoreOptions::deletion_repercussion`], a deletion of `a` is credited
/// ω(a → c) − ω(ε → c) per member substituting `a` by `c` at j.
pub fn score_repercussion(
    stats: &PositionStats,
    model: &CostModel,
    options: ScoreOptions,
    counter: &OpCounter,
) -> Vec<ScoredOp> {
    let mut updates = 0u64;
    let mut out = Vec::with_capacity(stats.len());
    for (key, ids) in stats.iter() {
        let op = stats.op(key);
        let direct_gain = op.cost(model) * ids.len() as f64;
        let mut indirect_delta = 0.0;
        let mut lemma = BTreeSet::new();
        let from = op.from();

        let (competitors, replacement): (Vec<(&OpKey, &[usize])>, Option<Sym>) = match key.kind {
            OpKind::Substitution | OpKind::Insertion => (
                stats
                    .at(key.position, key.kind)
                    .filter(|(k, _)| k.to != key.to)
                    .collect(),
                op.to(),
            ),
            OpKind::Deletion if options.deletion_repercussion => {
                (stats.at(key.position, OpKind::Substitution).collect(), None)
            }
            OpKind::Deletion => (Vec::new(), None),
        };
        for (other, other_ids) in competitors {
            let wanted = other.to;
            let delta = model.cost(from, wanted) - model.cost(replacement, wanted);
            indirect_delta += other_ids.len() as f64 * delta;
            updates += 1;
            if lemma_bound(model, replacement, from, wanted) {
                lemma.extend(other_ids.iter().copied().filter(|id| !ids.contains(id)));
            }
        }

        out.push(ScoredOp {
            op,
            direct_gain,
            indirect_delta,
            total_score: direct_gain + indirect_delta,
            supporters: ids.to_vec(),
            lemma_supporters: lemma.into_iter().collect(),
        });
    }
    counter.add_rep_updates(updates);
    rank(&mut out);
    out
}

/// Scores with the chosen heuristic; the result is ranked best first.
pub fn score(
    scorer: Scorer,
    stats: &PositionStats,
    model: &CostModel,
    options: ScoreOptions,
    counter: &OpCounter,
) -> Vec<ScoredOp> {
    match scorer {
        Scorer::Frequency => score_frequency(stats, model),
        Scorer::FrequencyCost => score_frequency_cost(stats, model),
        Scorer::Repercussion => score_repercussion(stats, model, options, counter),
    }
}

/// Canonical ranking: total score descending, then direct gain descending,
/// then position, kind (substitution < deletion < insertion) and target
/// symbol ascending.
pub fn rank(ops: &mut [ScoredOp]) {
    ops.sort_by(compare);
}

pub(crate) fn compare(x: &ScoredOp, y: &ScoredOp) -> Ordering {
    y.total_score
        .total_cmp(&x.total_score)
        .then(y.direct_gain.total_cmp(&x.direct_gain))
        .then(x.op.position().cmp(&y.op.position()))
        .then(x.op.kind().cmp(&y.op.kind()))
        .then(x.op.to().cmp(&y.op.to()))
}
