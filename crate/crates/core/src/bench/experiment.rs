use std::collections::BTreeMap;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::BenchRequest;
use crate::edit::{CostModel, Sym};
use crate::heuristic::{
    hinarejos_sweep, refine, set_median, RefineConfig, Refinement, Scorer, StringSet,
};
use crate::{Error, OpCounter, OpCounts, Result};

/// A median heuristic under comparison. The derived order is the canonical
/// output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    Frequency,
    #[serde(alias = "freqcost")]
    FrequencyCost,
    Repercussion,
    Sweep,
}

impl Heuristic {
    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Frequency => "frequency",
            Heuristic::FrequencyCost => "frequency_cost",
            Heuristic::Repercussion => "repercussion",
            Heuristic::Sweep => "sweep",
        }
    }

    pub fn scorer(self) -> Option<Scorer> {
        match self {
            Heuristic::Frequency => Some(Scorer::Frequency),
            Heuristic::FrequencyCost => Some(Scorer::FrequencyCost),
            Heuristic::Repercussion => Some(Scorer::Repercussion),
            Heuristic::Sweep => None,
        }
    }
}

impl std::fmt::Display for Heuristic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sweep" | "hinarejos" => Ok(Heuristic::Sweep),
            other => match other.parse::<Scorer>()? {
                Scorer::Frequency => Ok(Heuristic::Frequency),
                Scorer::FrequencyCost => Ok(Heuristic::FrequencyCost),
                Scorer::Repercussion => Ok(Heuristic::Repercussion),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub heuristics: Vec<Heuristic>,
    pub set_sizes: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub positive_only: bool,
    pub deletion_repercussion: bool,
    pub max_iterations: Option<usize>,
    /// Shuffles exactly tied operations; canonical order when unset.
    pub tie_seed: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            heuristics: vec![
                Heuristic::Frequency,
                Heuristic::FrequencyCost,
                Heuristic::Repercussion,
            ],
            set_sizes: vec![20],
            repetitions: 1,
            seed: 0,
            positive_only: false,
            deletion_repercussion: true,
            max_iterations: None,
            tie_seed: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions < 1 {
            return Err(Error::Input("repetitions must be at least 1".into()));
        }
        if self.heuristics.is_empty() {
            return Err(Error::Input("no heuristics to compare".into()));
        }
        if self.set_sizes.is_empty() || self.set_sizes.contains(&0) {
            return Err(Error::Input(
                "set sizes must be non-empty and positive".into(),
            ));
        }
        Ok(())
    }

    fn refine_config(&self, scorer: Scorer) -> RefineConfig {
        RefineConfig {
            scorer,
            positive_only: self.positive_only,
            deletion_repercussion: self.deletion_repercussion,
            max_iterations: self.max_iterations,
            seed: self.tie_seed,
        }
    }
}

/// One trace entry of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub heuristic: Heuristic,
    pub set_size: usize,
    pub rep: usize,
    pub iteration: usize,
    pub sum: f64,
    pub counts: OpCounts,
    pub wall_ms: f64,
}

/// Final state of one (heuristic, size, repetition) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub heuristic: Heuristic,
    pub set_size: usize,
    pub rep: usize,
    pub init_sum: f64,
    pub final_sum: f64,
    pub median: String,
    pub accepted_ops: usize,
    pub ops_dequeued: usize,
    pub counts: OpCounts,
}

/// Means over repetitions for one (heuristic, size) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub heuristic: Heuristic,
    pub set_size: usize,
    pub runs: usize,
    pub mean_final_sum: f64,
    pub mean_total_ops: f64,
    pub mean_distance_evals: f64,
    pub mean_accepted_ops: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunReport {
    pub rows: Vec<MetricsRow>,
    pub runs: Vec<RunResult>,
    pub summary: Vec<SummaryRow>,
}

impl RunReport {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows of one run in iteration order.
    pub fn run_rows(&self, heuristic: Heuristic, set_size: usize, rep: usize) -> Vec<&MetricsRow> {
        self.rows
            .iter()
            .filter(|r| r.heuristic == heuristic && r.set_size == set_size && r.rep == rep)
            .collect()
    }

    pub fn summary_for(&self, heuristic: Heuristic, set_size: usize) -> Option<&SummaryRow> {
        self.summary
            .iter()
            .find(|s| s.heuristic == heuristic && s.set_size == set_size)
    }

    /// Builds the report from runs, sorting into canonical order and
    /// computing the summary.
    pub fn from_runs(mut runs: Vec<(RunResult, Vec<MetricsRow>)>) -> Self {
        runs.sort_by_key(|(r, _)| (r.heuristic, r.set_size, r.rep));
        let mut cells: BTreeMap<(Heuristic, usize), Vec<&RunResult>> = BTreeMap::new();
        for (r, _) in &runs {
            cells.entry((r.heuristic, r.set_size)).or_default().push(r);
        }
        let summary = cells
            .into_iter()
            .map(|((heuristic, set_size), rs)| {
                let n = rs.len() as f64;
                let mean = |f: &dyn Fn(&RunResult) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / n;
                SummaryRow {
                    heuristic,
                    set_size,
                    runs: rs.len(),
                    mean_final_sum: mean(&|r| r.final_sum),
                    mean_total_ops: mean(&|r| r.counts.total() as f64),
                    mean_distance_evals: mean(&|r| r.counts.distance_evals as f64),
                    mean_accepted_ops: mean(&|r| r.accepted_ops as f64),
                }
            })
            .collect();
        let (results, rows): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
        RunReport {
            rows: rows.into_iter().flatten().collect(),
            runs: results,
            summary,
        }
    }
}

/// Runs one heuristic on one set, starting from `init`.
pub fn run_single(
    heuristic: Heuristic,
    set: &StringSet,
    init: &[Sym],
    model: &CostModel,
    config: &ExperimentConfig,
    rep: usize,
) -> Result<(RunResult, Vec<MetricsRow>)> {
    run_traced(heuristic, set, init, model, config, rep).map(|(_, result, rows)| (result, rows))
}

/// [`run_single`], also returning the refinement with its full trace.
pub fn run_traced(
    heuristic: Heuristic,
    set: &StringSet,
    init: &[Sym],
    model: &CostModel,
    config: &ExperimentConfig,
    rep: usize,
) -> Result<(Refinement, RunResult, Vec<MetricsRow>)> {
    let counter = OpCounter::new();
    let refinement: Refinement = match heuristic.scorer() {
        Some(scorer) => refine(set, init, model, &config.refine_config(scorer), &counter)?,
        None => hinarejos_sweep(set, init, model, &counter)?,
    };
    let entries = &refinement.trace.entries;
    let rows = entries
        .iter()
        .enumerate()
        .map(|(iteration, e)| MetricsRow {
            heuristic,
            set_size: set.len(),
            rep,
            iteration,
            sum: e.sum,
            counts: e.counts,
            wall_ms: (e.elapsed_ms * 1e3).round() / 1e3,
        })
        .collect();
    let result = RunResult {
        heuristic,
        set_size: set.len(),
        rep,
        init_sum: entries.first().map_or(refinement.sum, |e| e.sum),
        final_sum: refinement.sum,
        median: set.alphabet().decode(&refinement.median),
        accepted_ops: refinement.trace.accepted(),
        ops_dequeued: refinement.trace.ops_dequeued(),
        counts: counter.snapshot(),
    };
    Ok((refinement, result, rows))
}

/// Runs every (repetition, size, heuristic) cell.
///
/// Repetition `r` materializes its dataset, shuffles member indices with a
/// generator seeded from `(seed, r)` and uses nested prefixes of that
/// permutation for the set sizes. Every heuristic starts from the subset's
/// set median; computing it is not counted.
pub fn run_experiment(request: &BenchRequest) -> Result<RunReport> {
    let config = &request.experiment;
    config.validate()?;
    let model = request.costs.build(&request.dataset.alphabet()?)?;
    let mut runs = Vec::new();
    for rep in 0..config.repetitions {
        let data = request.dataset.materialize(rep)?;
        let max = *config.set_sizes.iter().max().expect("validated");
        if max > data.len() {
            return Err(Error::Input(format!(
                "set size {max} exceeds the {} available strings",
                data.len()
            )));
        }
        let mut order: Vec<usize> = (0..data.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(
            config.seed ^ (rep as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        order.shuffle(&mut rng);
        for &size in &config.set_sizes {
            let subset = data.subset(&order[..size])?;
            let (_, init) = set_median(&subset, &model, &OpCounter::new())?;
            for &h in &config.heuristics {
                runs.push(run_single(h, &subset, &init, &model, config, rep)?);
            }
        }
    }
    Ok(RunReport::from_runs(runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{CostSpec, DatasetSource};
    use crate::datasets::{DatasetKind, DatasetSpec};

    fn worked_request(heuristics: Vec<Heuristic>) -> BenchRequest {
        let (alphabet, _) = crate::datasets::builtin_table1();
        BenchRequest {
            dataset: DatasetSource::Strings {
                alphabet,
                strings: vec!["0".into(), "1".into(), "4".into()],
                labels: None,
            },
            costs: CostSpec::Table1,
            experiment: ExperimentConfig {
                heuristics,
                set_sizes: vec![3],
                ..ExperimentConfig::default()
            },
        }
    }

    #[test]
    fn worked_example_through_the_harness() {
        // set median of {0,1,4} is "1" already; start the runs from "2" instead
        let req = worked_request(vec![Heuristic::Repercussion, Heuristic::FrequencyCost]);
        let (alphabet, model) = crate::datasets::builtin_table1();
        let set = req.dataset.materialize(0).unwrap();
        let init = alphabet.encode("2").unwrap();
        let (rep, _) = run_single(
            Heuristic::Repercussion,
            &set,
            &init,
            &model,
            &req.experiment,
            0,
        )
        .unwrap();
        let (fc, _) = run_single(
            Heuristic::FrequencyCost,
            &set,
            &init,
            &model,
            &req.experiment,
            0,
        )
        .unwrap();
        assert_eq!((rep.final_sum, fc.final_sum), (4.0, 4.0));
        // the second iteration rejects both ops left on "1" under either scorer
        assert_eq!(rep.ops_dequeued, 1 + 2);
        assert_eq!(fc.ops_dequeued, 3 + 2);
        assert_eq!(rep.counts.distance_evals, 3 + 3 + 3 + 2 * 3);
        assert_eq!(fc.counts.distance_evals, 3 + 3 * 3 + 3 + 2 * 3);
    }

    #[test]
    fn singleton_runs_are_trivial() {
        let mut req = worked_request(vec![Heuristic::Repercussion, Heuristic::Sweep]);
        req.experiment.set_sizes = vec![1];
        let report = run_experiment(&req).unwrap();
        assert!(report.runs.iter().all(|r| r.final_sum == 0.0));
        assert_eq!(report.rows.len(), 2);
    }

    #[test]
    fn zero_noise_cluster_converges_to_center() {
        let req = BenchRequest {
            dataset: DatasetSource::Generate {
                spec: DatasetSpec {
                    kind: DatasetKind::PerturbedCluster,
                    alphabet_size: 8,
                    count: 10,
                    mean_length: 12,
                    length_jitter: 2,
                    noise_rate: 0.0,
                    seed: 1,
                },
            },
            costs: CostSpec::Circular,
            experiment: ExperimentConfig {
                heuristics: vec![
                    Heuristic::Frequency,
                    Heuristic::FrequencyCost,
                    Heuristic::Repercussion,
                    Heuristic::Sweep,
                ],
                set_sizes: vec![5, 10],
                repetitions: 2,
                ..ExperimentConfig::default()
            },
        };
        let report = run_experiment(&req).unwrap();
        assert_eq!(report.runs.len(), 16);
        assert!(report.runs.iter().all(|r| r.final_sum == 0.0));
        assert_eq!(report.summary.len(), 8);
    }

    #[test]
    fn too_small_dataset_is_an_input_error() {
        let mut req = worked_request(vec![Heuristic::Repercussion]);
        req.experiment.set_sizes = vec![4];
        assert!(matches!(run_experiment(&req), Err(Error::Input(_))));
    }

    #[test]
    fn rows_are_in_canonical_order() {
        let mut req = worked_request(vec![Heuristic::Sweep, Heuristic::Frequency]);
        req.experiment.set_sizes = vec![3, 2];
        req.experiment.repetitions = 2;
        let report = run_experiment(&req).unwrap();
        let keys: Vec<_> = report
            .rows
            .iter()
            .map(|r| (r.heuristic, r.set_size, r.rep, r.iteration))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
