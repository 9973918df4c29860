//! Approximate median strings by ranked single-operation perturbation.
//!
//! One refinement iteration computes an optimal script from the current
//! candidate to every set member, tallies which operation each script demands
//! at each candidate position ([`collect_stats`]), ranks those operations with
//! a [`Scorer`], and then tries them in rank order until one lowers the sum of
//! distances.

mod neighbors;
mod refine;
mod score;
mod set;
mod stats;
mod sweep;

pub use refine::{refine, RefineConfig, Refinement, RefinementTrace, TraceEntry};
pub use score::{
    lemma1_holds, rank, score, score_frequency, score_frequency_cost, score_repercussion,
    ScoreOptions, ScoredOp, Scorer,
};
pub use set::{set_median, sum_distances, Member, StringSet};
pub use stats::{collect_stats, OpKey, PositionStats, Statistics};
pub use sweep::hinarejos_sweep;
