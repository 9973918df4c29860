use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::neighbors::Neighbors;
use super::score::{score, ScoreOptions, ScoredOp, Scorer};
use super::set::{sum_unchecked, StringSet};
use super::stats::collect_stats;
use crate::edit::{apply_op, CostModel, EditOp, Sym, COST_TOLERANCE};
use crate::{OpCounter, OpCounts, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RefineConfig {
    pub scorer: Scorer,
    /// Only enqueue operations with a positive score.
    pub positive_only: bool,
    pub deletion_repercussion: bool,
    /// Upper bound on outer iterations; `None` runs to convergence.
    pub max_iterations: Option<usize>,
    /// When set, operations with exactly equal scores are shuffled with this
    /// seed instead of kept in canonical order.
    pub seed: Option<u64>,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig {
            scorer: Scorer::Repercussion,
            positive_only: false,
            deletion_repercussion: true,
            max_iterations: None,
            seed: None,
        }
    }
}

impl RefineConfig {
    pub fn with_scorer(scorer: Scorer) -> Self {
        RefineConfig {
            scorer,
            ..Self::default()
        }
    }
}

/// One outer iteration: the candidate it started from, that candidate's sum
/// of distances, how many queued operations were tried, and the one accepted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub candidate: Vec<Sym>,
    pub sum: f64,
    pub ops_dequeued: usize,
    pub accepted: Option<EditOp>,
    /// Cumulative counters at the end of the iteration.
    pub counts: OpCounts,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RefinementTrace {
    pub entries: Vec<TraceEntry>,
}

impl RefinementTrace {
    pub fn sums(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.sum).collect()
    }

    pub fn accepted(&self) -> usize {
        self.entries.iter().filter(|e| e.accepted.is_some()).count()
    }

    pub fn ops_dequeued(&self) -> usize {
        self.entries.iter().map(|e| e.ops_dequeued).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub median: Vec<Sym>,
    pub sum: f64,
    pub trace: RefinementTrace,
}

/// Iterative refinement with a ranked operation queue.
///
/// Each iteration collects statistics on the current candidate, scores and
/// ranks the observed operations, then applies them one at a time to the
/// candidate until the sum of distances strictly drops. The first improving
/// operation is kept. Stops when a whole queue yields no improvement.
///
/// Each tried operation costs one distance evaluation per member; those are
/// computed from prefix and suffix tables of the current candidate, which
/// gives the same values as a full recomputation in linear time per member.
pub fn refine(
    set: &StringSet,
    init: &[Sym],
    model: &CostModel,
    config: &RefineConfig,
    counter: &OpCounter,
) -> Result<Refinement> {
    set.check_compatible(model)?;
    set.alphabet().check(init)?;
    let start = Instant::now();
    let options = ScoreOptions {
        deletion_repercussion: config.deletion_repercussion,
    };
    let mut rng = config.seed.map(ChaCha8Rng::seed_from_u64);
    let mut current = init.to_vec();
    let mut current_sum: Option<f64> = None;
    let mut entries = Vec::new();

    loop {
        if config
            .max_iterations
            .is_some_and(|max| entries.len() >= max)
        {
            let sum = match current_sum {
                Some(s) => s,
                None => sum_unchecked(&current, set, model, counter),
            };
            entries.push(TraceEntry {
                candidate: current.clone(),
                sum,
                ops_dequeued: 0,
                accepted: None,
                counts: counter.snapshot(),
                elapsed_ms: elapsed_ms(start),
            });
            current_sum = Some(sum);
            break;
        }

        let stats = collect_stats(&current, set, model, counter)?;
        let sum = stats.sum;
        let mut queue = score(config.scorer, &stats.stats, model, options, counter);
        if config.positive_only {
            queue.retain(|s| s.total_score > 0.0);
        }
        if let Some(rng) = rng.as_mut() {
            shuffle_ties(&mut queue, rng);
        }

        let mut dequeued = 0;
        let mut accepted = None;
        if !queue.is_empty() {
            let mut neighbors = Neighbors::new(&current, set, model, counter);
            for scored in &queue {
                dequeued += 1;
                let next_sum = neighbors.sum(&scored.op, counter);
                if next_sum < sum - COST_TOLERANCE {
                    accepted = Some((scored.op, apply_op(&current, &scored.op)?, next_sum));
                    break;
                }
            }
        }

        entries.push(TraceEntry {
            candidate: current.clone(),
            sum,
            ops_dequeued: dequeued,
            accepted: accepted.as_ref().map(|(op, _, _)| *op),
            counts: counter.snapshot(),
            elapsed_ms: elapsed_ms(start),
        });
        match accepted {
            Some((_, next, next_sum)) => {
                current = next;
                current_sum = Some(next_sum);
            }
            None => {
                current_sum = Some(sum);
                break;
            }
        }
    }

    Ok(Refinement {
        median: current,
        sum: current_sum.expect("loop records a sum before leaving"),
        trace: RefinementTrace { entries },
    })
}

fn shuffle_ties(queue: &mut [ScoredOp], rng: &mut ChaCha8Rng) {
    let mut i = 0;
    while i < queue.len() {
        let mut j = i + 1;
        while j < queue.len() && queue[j].total_score == queue[i].total_score {
            j += 1;
        }
        queue[i..j].shuffle(rng);
        i = j;
    }
}

pub(crate) fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::builtin_table1;
    use crate::edit::Alphabet;

    fn worked() -> (StringSet, CostModel, Vec<Sym>) {
        let (alphabet, model) = builtin_table1();
        let set = StringSet::from_strs(alphabet.clone(), &["0", "1", "4"]).unwrap();
        let init = alphabet.encode("2").unwrap();
        (set, model, init)
    }

    #[test]
    fn repercussion_accepts_first_op() {
        let (set, model, init) = worked();
        let r = refine(
            &set,
            &init,
            &model,
            &RefineConfig::default(),
            &OpCounter::new(),
        )
        .unwrap();
        assert_eq!(set.alphabet().decode(&r.median), "1");
        assert_eq!(r.sum, 4.0);
        let e = &r.trace.entries;
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].ops_dequeued, 1);
        assert_eq!(
            e[0].accepted,
            Some(EditOp::Substitution {
                position: 0,
                from: 2,
                to: 1
            })
        );
        assert_eq!(e[1].accepted, None);
        assert_eq!(r.trace.sums(), vec![5.0, 4.0]);
    }

    #[test]
    fn frequency_cost_tries_the_tied_ops_first() {
        let (set, model, init) = worked();
        let r = refine(
            &set,
            &init,
            &model,
            &RefineConfig::with_scorer(Scorer::FrequencyCost),
            &OpCounter::new(),
        )
        .unwrap();
        assert_eq!(set.alphabet().decode(&r.median), "1");
        assert_eq!(r.trace.entries[0].ops_dequeued, 3);
        assert_eq!(r.trace.accepted(), 1);
    }

    #[test]
    fn singleton_set_is_already_optimal() {
        let alphabet = Alphabet::numbered(3).unwrap();
        let model = CostModel::unit(alphabet.clone());
        let set = StringSet::from_strs(alphabet, &["0120"]).unwrap();
        let init = set.members()[0].seq.clone();
        let r = refine(
            &set,
            &init,
            &model,
            &RefineConfig::default(),
            &OpCounter::new(),
        )
        .unwrap();
        assert_eq!(r.median, init);
        assert_eq!(r.sum, 0.0);
        assert_eq!(r.trace.entries.len(), 1);
        assert_eq!(r.trace.ops_dequeued(), 0);
    }

    #[test]
    fn iteration_cap() {
        let alphabet = Alphabet::numbered(2).unwrap();
        let model = CostModel::unit(alphabet.clone());
        let set = StringSet::from_strs(alphabet.clone(), &["0000", "0000"]).unwrap();
        let init = alphabet.encode("1111").unwrap();
        let config = RefineConfig {
            max_iterations: Some(2),
            ..RefineConfig::default()
        };
        let r = refine(&set, &init, &model, &config, &OpCounter::new()).unwrap();
        assert_eq!(r.trace.entries.len(), 3);
        assert_eq!(r.trace.sums(), vec![8.0, 6.0, 4.0]);
        assert_eq!(r.sum, 4.0);
        assert!(r.trace.entries.last().unwrap().accepted.is_none());
    }

    #[test]
    fn positive_only_shrinks_the_queue() {
        let (set, model, init) = worked();
        let config = RefineConfig {
            positive_only: true,
            ..RefineConfig::default()
        };
        let r = refine(&set, &init, &model, &config, &OpCounter::new()).unwrap();
        assert_eq!(r.sum, 4.0);
    }

    #[test]
    fn seeded_tie_shuffle_is_reproducible() {
        let (set, model, init) = worked();
        let config = RefineConfig {
            scorer: Scorer::Frequency,
            seed: Some(11),
            ..RefineConfig::default()
        };
        let a = refine(&set, &init, &model, &config, &OpCounter::new()).unwrap();
        let b = refine(&set, &init, &model, &config, &OpCounter::new()).unwrap();
        assert_eq!(a.median, b.median);
        assert_eq!(a.trace.ops_dequeued(), b.trace.ops_dequeued());
        assert_eq!(a.sum, 4.0);
    }
}
