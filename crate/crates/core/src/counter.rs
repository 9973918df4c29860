//! Instrumentation counters for elementary operations.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

/// Shared, monotonically increasing operation counters for one run.
///
/// Relaxed atomics so a counter can be handed to concurrent workers; a run
/// takes [`OpCounter::snapshot`]s to record progress.
#[derive(Debug, Default)]
pub struct OpCounter {
    dp_cells: AtomicU64,
    distance_evals: AtomicU64,
    stat_updates: AtomicU64,
    rep_updates: AtomicU64,
}

/// Point-in-time copy of an [`OpCounter`].
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub dp_cells: u64,
    pub distance_evals: u64,
    pub stat_updates: u64,
    pub rep_updates: u64,
}

impl OpCounts {
    /// Elementary operations: DP cells plus statistics and repercussion updates.
    pub fn total(&self) -> u64 {
        self.dp_cells + self.stat_updates + self.rep_updates
    }

    pub fn saturating_sub(&self, earlier: &OpCounts) -> OpCounts {
        OpCounts {
            dp_cells: self.dp_cells.saturating_sub(earlier.dp_cells),
            distance_evals: self.distance_evals.saturating_sub(earlier.distance_evals),
            stat_updates: self.stat_updates.saturating_sub(earlier.stat_updates),
            rep_updates: self.rep_updates.saturating_sub(earlier.rep_updates),
        }
    }
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one full distance computation over a `rows × cols` DP matrix.
    pub fn add_distance(&self, cells: u64) {
        self.dp_cells.fetch_add(cells, Ordering::Relaxed);
        self.distance_evals.fetch_add(1, Ordering::Relaxed);
    }

    /// DP cells that are not part of a distance evaluation of their own,
    /// such as prefix and suffix tables.
    pub fn add_cells(&self, cells: u64) {
        self.dp_cells.fetch_add(cells, Ordering::Relaxed);
    }

    pub fn add_stat_updates(&self, n: u64) {
        self.stat_updates.fetch_add(n, Ordering::Relaxed);
    }

    pub fn add_rep_updates(&self, n: u64) {
        self.rep_updates.fetch_add(n, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> OpCounts {
        OpCounts {
            dp_cells: self.dp_cells.load(Ordering::Relaxed),
            distance_evals: self.distance_evals.load(Ordering::Relaxed),
            stat_updates: self.stat_updates.load(Ordering::Relaxed),
            rep_updates: self.rep_updates.load(Ordering::Relaxed),
        }
    }
}
