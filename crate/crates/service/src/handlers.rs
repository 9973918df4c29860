use axum::Json;
use median_core::bench::{run_experiment, run_traced, ExperimentConfig, RunReport};
use median_core::datasets::generate as generate_dataset;
use median_core::edit::{apply_op, distance_with_script, validate_cost_matrix, CostModel};
use median_core::heuristic::{
    self, collect_stats, set_median as core_set_median, ScoreOptions, StringSet,
};
use median_core::{Error, OpCounter};

use crate::api::*;
use crate::ApiError;

type Reply<T> = Result<Json<T>, ApiError>;

async fn blocking<T, F>(f: F) -> Reply<T>
where
    F: FnOnce() -> Result<T, Error> + Send + 'static,
    T: Send + 'static,
{
    Ok(Json(tokio::task::spawn_blocking(f).await??))
}

impl SetInput {
    fn build(&self) -> Result<(StringSet, CostModel), Error> {
        let set = StringSet::from_strs(self.alphabet.clone(), &self.strings)?;
        let model = self.costs.build(&self.alphabet)?;
        Ok((set, model))
    }
}

pub async fn health() -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

pub async fn validate_costs(Json(req): Json<ValidateCostsRequest>) -> Reply<ValidateCostsResponse> {
    let violations = validate_cost_matrix(req.alphabet.len(), &req.rows)?;
    Ok(Json(ValidateCostsResponse {
        metric: violations.is_empty(),
        violations,
    }))
}

pub async fn distance(Json(req): Json<DistanceRequest>) -> Reply<DistanceResponse> {
    blocking(move || {
        let model = req.costs.build(&req.alphabet)?;
        let a = req.alphabet.encode(&req.source)?;
        let b = req.alphabet.encode(&req.target)?;
        let (distance, script) = distance_with_script(&a, &b, &model)?;
        Ok(DistanceResponse {
            distance,
            script: req.script.then(|| ScriptDto {
                ops: script
                    .ops
                    .iter()
                    .map(|op| OpDto::from_op(op, &req.alphabet))
                    .collect(),
                total_cost: script.total_cost,
            }),
        })
    })
    .await
}

pub async fn apply(Json(req): Json<ApplyRequest>) -> Reply<ApplyResponse> {
    let mut s = req.alphabet.encode(&req.source)?;
    for op in &req.ops {
        s = apply_op(&s, &op.to_op(&req.alphabet)?)?;
    }
    Ok(Json(ApplyResponse {
        result: req.alphabet.decode(&s),
    }))
}

pub async fn sum(Json(req): Json<CandidateRequest>) -> Reply<SumResponse> {
    blocking(move || {
        let (set, model) = req.set.build()?;
        let candidate = req.set.alphabet.encode(&req.candidate)?;
        let sum = heuristic::sum_distances(&candidate, &set, &model, &OpCounter::new())?;
        Ok(SumResponse { sum })
    })
    .await
}

pub async fn set_median(Json(req): Json<SetInput>) -> Reply<SetMedianResponse> {
    blocking(move || {
        let (set, model) = req.build()?;
        let counter = OpCounter::new();
        let (index, median) = core_set_median(&set, &model, &counter)?;
        let sum = heuristic::sum_distances(&median, &set, &model, &counter)?;
        Ok(SetMedianResponse {
            index,
            median: req.alphabet.decode(&median),
            sum,
        })
    })
    .await
}

pub async fn stats(Json(req): Json<CandidateRequest>) -> Reply<StatsResponse> {
    blocking(move || {
        let (set, model) = req.set.build()?;
        let candidate = req.set.alphabet.encode(&req.candidate)?;
        let s = collect_stats(&candidate, &set, &model, &OpCounter::new())?;
        let buckets = s
            .stats
            .iter()
            .map(|(key, ids)| BucketDto {
                op: OpDto::from_op(&s.stats.op(key), &req.set.alphabet),
                supporters: ids.to_vec(),
            })
            .collect();
        Ok(StatsResponse {
            sum: s.sum,
            buckets,
        })
    })
    .await
}

pub async fn score(Json(req): Json<ScoreRequest>) -> Reply<ScoreResponse> {
    blocking(move || {
        let (set, model) = req.set.build()?;
        let candidate = req.set.alphabet.encode(&req.candidate)?;
        let counter = OpCounter::new();
        let s = collect_stats(&candidate, &set, &model, &counter)?;
        let options = ScoreOptions {
            deletion_repercussion: req.deletion_repercussion,
        };
        let ops = heuristic::score(req.scorer, &s.stats, &model, options, &counter)
            .iter()
            .map(|op| ScoredOpDto::new(op, &req.set.alphabet))
            .collect();
        Ok(ScoreResponse { ops })
    })
    .await
}

pub async fn refine(Json(req): Json<RefineRequest>) -> Reply<RefineResponse> {
    blocking(move || {
        let set = req.dataset.materialize(0)?;
        let alphabet = set.alphabet().clone();
        let model = req.costs.build(&alphabet)?;
        let init = match &req.init {
            Init::SetMedian => core_set_median(&set, &model, &OpCounter::new())?.1,
            Init::String(s) => alphabet.encode(s)?,
        };
        let config = ExperimentConfig {
            heuristics: vec![req.heuristic],
            set_sizes: vec![set.len()],
            positive_only: req.positive_only,
            deletion_repercussion: req.deletion_repercussion,
            max_iterations: req.max_iterations,
            tie_seed: req.tie_seed,
            ..ExperimentConfig::default()
        };
        let (refinement, result, rows) =
            run_traced(req.heuristic, &set, &init, &model, &config, 0)?;
        let accepted = refinement
            .trace
            .entries
            .iter()
            .filter_map(|e| e.accepted.as_ref())
            .map(|op| OpDto::from_op(op, &alphabet))
            .collect();
        Ok(RefineResponse {
            init: alphabet.decode(&init),
            median: result.median.clone(),
            sum: result.final_sum,
            accepted,
            report: RunReport::from_runs(vec![(result, rows)]),
        })
    })
    .await
}

pub async fn generate(Json(spec): Json<GenerateRequest>) -> Reply<GenerateResponse> {
    blocking(move || {
        let d = generate_dataset(&spec)?;
        let alphabet = d.set.alphabet().clone();
        Ok(GenerateResponse {
            strings: d
                .set
                .members()
                .iter()
                .map(|m| alphabet.decode(&m.seq))
                .collect(),
            center: d.center.map(|c| alphabet.decode(&c)),
            alphabet,
        })
    })
    .await
}

pub async fn bench(Json(req): Json<BenchRequest>) -> Reply<BenchResponse> {
    blocking(move || run_experiment(&req)).await
}
