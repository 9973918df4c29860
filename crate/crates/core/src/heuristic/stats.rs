use std::collections::BTreeMap;
use std::ops::Bound;

use serde::{Deserialize, Serialize};

use super::set::StringSet;
use crate::edit::{distance::script_unchecked, CostModel, EditOp, EditScript, OpKind, Sym};
use crate::{OpCounter, Result};

/// Statistics bucket: an operation kind and target symbol at one candidate
/// position (a gap index for insertions). The source symbol is implied by
/// the candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OpKey {
    pub position: usize,
    pub kind: OpKind,
    pub to: Option<Sym>,
}

impl From<&EditOp> for OpKey {
    fn from(op: &EditOp) -> Self {
        OpKey {
            position: op.position(),
            kind: op.kind(),
            to: op.to(),
        }
    }
}

/// Per-position tallies of the operations the set members' optimal scripts
/// demand of a candidate.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PositionStats {
    candidate: Vec<Sym>,
    buckets: BTreeMap<OpKey, Vec<usize>>,
}

impl PositionStats {
    pub fn new(candidate: Vec<Sym>) -> Self {
        PositionStats {
            candidate,
            buckets: BTreeMap::new(),
        }
    }

    /// Records that `member` demands `op`. Returns false when the member was
    /// already counted in that bucket (repeated insertions at one gap).
    pub fn record(&mut self, op: &EditOp, member: usize) -> bool {
        let ids = self.buckets.entry(OpKey::from(op)).or_default();
        if ids.contains(&member) {
            return false;
        }
        ids.push(member);
        true
    }

    pub fn candidate(&self) -> &[Sym] {
        &self.candidate
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// Number of distinct (position, kind, symbol) buckets.
    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn count(&self, key: &OpKey) -> usize {
        self.buckets.get(key).map_or(0, Vec::len)
    }

    pub fn supporters(&self, key: &OpKey) -> &[usize] {
        self.buckets.get(key).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OpKey, &[usize])> {
        self.buckets.iter().map(|(k, v)| (k, v.as_slice()))
    }

    /// Buckets of one kind at one position, ordered by target symbol.
    pub fn at(&self, position: usize, kind: OpKind) -> impl Iterator<Item = (&OpKey, &[usize])> {
        let lo = OpKey {
            position,
            kind,
            to: None,
        };
        let hi = OpKey {
            position,
            kind,
            to: Some(Sym::MAX),
        };
        self.buckets
            .range((Bound::Included(lo), Bound::Included(hi)))
            .map(|(k, v)| (k, v.as_slice()))
    }

    /// The concrete operation a bucket stands for on the candidate.
    pub fn op(&self, key: &OpKey) -> EditOp {
        let from = match key.kind {
            OpKind::Insertion => None,
            _ => Some(self.candidate[key.position]),
        };
        EditOp::from_parts(key.kind, key.position, from, key.to)
            .expect("bucket keys come from valid ops")
    }
}

/// Output of one statistics pass.
#[derive(Debug, Clone)]
pub struct Statistics {
    pub stats: PositionStats,
    /// Σ d(candidate, member).
    pub sum: f64,
    pub distances: Vec<f64>,
    pub scripts: Vec<EditScript>,
}

/// Computes an optimal script from `candidate` to every member and tallies
/// each cost-bearing operation by candidate position.
pub fn collect_stats(
    candidate: &[Sym],
    set: &StringSet,
    model: &CostModel,
    counter: &OpCounter,
) -> Result<Statistics> {
    set.check_compatible(model)?;
    set.alphabet().check(candidate)?;
    let mut stats = PositionStats::new(candidate.to_vec());
    let mut distances = Vec::with_capacity(set.len());
    let mut scripts = Vec::with_capacity(set.len());
    let mut updates = 0u64;
    for member in set.members() {
        let (d, script) = script_unchecked(candidate, &member.seq, model, counter);
        for op in &script.ops {
            if stats.record(op, member.id) {
                updates += 1;
            }
        }
        distances.push(d);
        scripts.push(script);
    }
    counter.add_stat_updates(updates);
    Ok(Statistics {
        stats,
        sum: distances.iter().sum(),
        distances,
        scripts,
    })
}
