//! Result-set types shared by the samplers.

use serde::{Deserialize, Serialize};

/// Whether a sample was still live at termination or had been replaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Live,
    Dead,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Live => "live",
            Status::Dead => "dead",
        }
    }
}

/// A design point with its estimated feasibility probability.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignSample {
    pub d: Vec<f64>,
    pub prob: f64,
    pub status: Status,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// Every live point reached the reliability target.
    ReachedAlpha,
    /// Progress on the worst live point stalled; the target design space is
    /// likely empty.
    StalledEmptyDs,
    /// The iteration budget ran out first.
    MaxIterations,
    /// A non-iterative run (Monte Carlo) finished all scheduled points.
    Completed,
}

/// Bookkeeping counters for a sampler run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunStats {
    pub model_evals: u64,
    pub iterations: u64,
    pub proposals_generated: u64,
    pub proposals_accepted: u64,
    pub proposals_rejected: u64,
    pub termination: Termination,
}

/// One nested-sampling iteration in the diagnostic trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    /// 1-based iteration index.
    pub iteration: u64,
    /// Worst live-point probability at the start of the iteration (the
    /// replacement floor for its proposal batch).
    pub p_min: f64,
    /// Ellipsoid enlargement factor used for the batch.
    pub enlargement: f64,
    /// Cumulative model evaluations after the batch.
    pub model_evals: u64,
}

/// Samples, counters, and (for nested sampling) the per-iteration trace.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub samples: Vec<DesignSample>,
    pub stats: RunStats,
    pub trace: Vec<TraceRecord>,
}
