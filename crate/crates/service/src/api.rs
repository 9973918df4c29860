//! Request and response bodies. Strings travel as text over the declared
//! alphabet; operations name their symbols as characters, `null` for ε.

use median_core::bench::{CostSpec, DatasetSource, Heuristic, RunReport};
use median_core::datasets::DatasetSpec;
use median_core::edit::{Alphabet, EditOp, OpKind, Violation};
use median_core::heuristic::{ScoredOp, Scorer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidateCostsRequest {
    pub alphabet: Alphabet,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidateCostsResponse {
    pub metric: bool,
    pub violations: Vec<Violation>,
}

/// An operation in symbol form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpDto {
    pub kind: OpKind,
    pub position: usize,
    pub from: Option<char>,
    pub to: Option<char>,
}

impl OpDto {
    pub fn from_op(op: &EditOp, alphabet: &Alphabet) -> Self {
        let sym = |c: Option<u8>| c.and_then(|c| alphabet.symbol(c));
        OpDto {
            kind: op.kind(),
            position: op.position(),
            from: sym(op.from()),
            to: sym(op.to()),
        }
    }

    pub fn to_op(&self, alphabet: &Alphabet) -> median_core::Result<EditOp> {
        let code = |c: Option<char>| {
            c.map(|c| alphabet.code(c).ok_or(median_core::Error::UnknownSymbol(c)))
                .transpose()
        };
        EditOp::from_parts(self.kind, self.position, code(self.from)?, code(self.to)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceRequest {
    pub alphabet: Alphabet,
    pub costs: CostSpec,
    pub source: String,
    pub target: String,
    /// Also return an optimal script.
    #[serde(default)]
    pub script: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScriptDto {
    pub ops: Vec<OpDto>,
    pub total_cost: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceResponse {
    pub distance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<ScriptDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApplyRequest {
    pub alphabet: Alphabet,
    pub source: String,
    pub ops: Vec<OpDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApplyResponse {
    pub result: String,
}

/// A string set with its costs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetInput {
    pub alphabet: Alphabet,
    pub costs: CostSpec,
    pub strings: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateRequest {
    #[serde(flatten)]
    pub set: SetInput,
    pub candidate: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumResponse {
    pub sum: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetMedianResponse {
    pub index: usize,
    pub median: String,
    pub sum: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BucketDto {
    pub op: OpDto,
    pub supporters: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatsResponse {
    pub sum: f64,
    pub buckets: Vec<BucketDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoreRequest {
    #[serde(flatten)]
    pub set: SetInput,
    pub candidate: String,
    pub scorer: Scorer,
    #[serde(default = "yes")]
    pub deletion_repercussion: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoredOpDto {
    pub op: OpDto,
    pub direct_gain: f64,
    pub indirect_delta: f64,
    pub total_score: f64,
    pub supporters: Vec<usize>,
    pub lemma_supporters: Vec<usize>,
}

impl ScoredOpDto {
    pub fn new(s: &ScoredOp, alphabet: &Alphabet) -> Self {
        ScoredOpDto {
            op: OpDto::from_op(&s.op, alphabet),
            direct_gain: s.direct_gain,
            indirect_delta: s.indirect_delta,
            total_score: s.total_score,
            supporters: s.supporters.clone(),
            lemma_supporters: s.lemma_supporters.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoreResponse {
    /// Ranked best first.
    pub ops: Vec<ScoredOpDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Init {
    SetMedian,
    String(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefineRequest {
    pub dataset: DatasetSource,
    pub costs: CostSpec,
    pub heuristic: Heuristic,
    #[serde(default = "set_median_init")]
    pub init: Init,
    #[serde(default)]
    pub positive_only: bool,
    #[serde(default = "yes")]
    pub deletion_repercussion: bool,
    #[serde(default)]
    pub max_iterations: Option<usize>,
    /// Seeds random ordering of exactly tied operations.
    #[serde(default)]
    pub tie_seed: Option<u64>,
}

fn set_median_init() -> Init {
    Init::SetMedian
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefineResponse {
    pub init: String,
    pub median: String,
    pub sum: f64,
    pub accepted: Vec<OpDto>,
    pub report: RunReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenerateResponse {
    pub alphabet: Alphabet,
    pub strings: Vec<String>,
    pub center: Option<String>,
}

pub type GenerateRequest = DatasetSpec;
pub type BenchResponse = RunReport;

pub use median_core::bench::BenchRequest;
