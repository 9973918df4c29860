//! Experiment orchestration, instrumentation output and plots.

mod config;
mod experiment;
mod output;
mod plots;

pub use config::{BenchConfig, BenchRequest, CostSpec, DatasetSource};
pub use experiment::{
    run_experiment, run_single, run_traced, ExperimentConfig, Heuristic, MetricsRow, RunReport,
    RunResult, SummaryRow,
};
pub use output::{emit_csv, format_csv, parse_csv, strip_wall_time, CSV_HEADER};
pub use plots::{emit_plots, render_plots, LineChart, Series};
