//! HTTP/JSON front end for `median-core`.
//!
//! Every computation runs on the blocking pool; handlers only translate
//! between the wire types in [`api`] and the core library.

pub mod api;
mod error;
mod handlers;

use std::net::SocketAddr;

use axum::routing::{get, post};
use axum::Router;
use tokio::net::TcpListener;

pub use error::ApiError;

pub fn router() -> Router {
    Router::new()
        .route("/health", get(handlers::health))
        .route("/v1/validate-costs", post(handlers::validate_costs))
        .route("/v1/distance", post(handlers::distance))
        .route("/v1/apply", post(handlers::apply))
        .route("/v1/sum", post(handlers::sum))
        .route("/v1/set-median", post(handlers::set_median))
        .route("/v1/stats", post(handlers::stats))
        .route("/v1/score", post(handlers::score))
        .route("/v1/refine", post(handlers::refine))
        .route("/v1/generate", post(handlers::generate))
        .route("/v1/bench", post(handlers::bench))
}

pub async fn serve(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}

/// Binds `addr` (port 0 picks a free one) and serves in a background task.
pub async fn spawn(addr: SocketAddr) -> std::io::Result<(SocketAddr, tokio::task::JoinHandle<()>)> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    let handle = tokio::spawn(async move {
        if let Err(e) = serve(listener).await {
            tracing::error!("median service stopped: {e}");
        }
    });
    Ok((local, handle))
}
