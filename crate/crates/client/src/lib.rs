//! Typed client for the median service.

use median_core::bench::RunReport;
use median_service::api::*;
use reqwest::StatusCode;
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("request failed: {0}")]
    Http(#[from] reqwest::Error),
    #[error("service returned {status}: {message}")]
    Api { status: StatusCode, message: String },
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Debug, Clone)]
pub struct MedianClient {
    base: String,
    http: reqwest::Client,
}

impl MedianClient {
    /// `base` is the service root, e.g. `http://127.0.0.1:7878`.
    pub fn new(base: impl Into<String>) -> Self {
        MedianClient {
            base: base.into().trim_end_matches('/').to_string(),
            http: reqwest::Client::new(),
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    async fn post<B: Serialize, R: DeserializeOwned>(&self, path: &str, body: &B) -> Result<R> {
        let resp = self
            .http
            .post(format!("{}{path}", self.base))
            .json(body)
            .send()
            .await?;
        decode(resp).await
    }

    pub async fn health(&self) -> Result<Health> {
        let resp = self
            .http
            .get(format!("{}/health", self.base))
            .send()
            .await?;
        decode(resp).await
    }

    pub async fn validate_costs(
        &self,
        req: &ValidateCostsRequest,
    ) -> Result<ValidateCostsResponse> {
        self.post("/v1/validate-costs", req).await
    }

    pub async fn distance(&self, req: &DistanceRequest) -> Result<DistanceResponse> {
        self.post("/v1/distance", req).await
    }

    pub async fn apply(&self, req: &ApplyRequest) -> Result<ApplyResponse> {
        self.post("/v1/apply", req).await
    }

    pub async fn sum(&self, req: &CandidateRequest) -> Result<SumResponse> {
        self.post("/v1/sum", req).await
    }

    pub async fn set_median(&self, req: &SetInput) -> Result<SetMedianResponse> {
        self.post("/v1/set-median", req).await
    }

    pub async fn stats(&self, req: &CandidateRequest) -> Result<StatsResponse> {
        self.post("/v1/stats", req).await
    }

    pub async fn score(&self, req: &ScoreRequest) -> Result<ScoreResponse> {
        self.post("/v1/score", req).await
    }

    pub async fn refine(&self, req: &RefineRequest) -> Result<RefineResponse> {
        self.post("/v1/refine", req).await
    }

    pub async fn generate(&self, req: &GenerateRequest) -> Result<GenerateResponse> {
        self.post("/v1/generate", req).await
    }

    pub async fn bench(&self, req: &BenchRequest) -> Result<RunReport> {
        self.post("/v1/bench", req).await
    }
}

async fn decode<R: DeserializeOwned>(resp: reqwest::Response) -> Result<R> {
    let status = resp.status();
    if status.is_success() {
        return Ok(resp.json().await?);
    }
    let text = resp.text().await?;
    let message = serde_json::from_str::<ErrorBody>(&text).map_or(text, |b| b.error);
    Err(ClientError::Api { status, message })
}
