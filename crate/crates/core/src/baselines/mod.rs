//! Methods RBS is measured against: deterministic backward and forward
//! pushes, and Monte-Carlo walks from a source.

mod backward;
mod forward;
mod monte_carlo;
mod queue;

use crate::score::ScoreVector;
use crate::stats::QueryStats;

pub use backward::{backward_search, backward_search_with};
pub use forward::{forward_search, forward_search_with};
pub use monte_carlo::monte_carlo_single_source;
pub use queue::QueuePolicy;

use queue::WorkQueue;

/// Residues, reserves and work queue of a running push algorithm.
///
/// Backward search keeps `r^b(·, t)` and `π^b(·, t)`; forward search keeps
/// `r^f(s, ·)` and `π^f(s, ·)`. Both are dense over the node set.
#[derive(Debug, Clone)]
pub struct PushState {
    residue: Vec<f64>,
    reserve: Vec<f64>,
    queue: WorkQueue,
    stats: QueryStats,
}

pub type BsState = PushState;
pub type FsState = PushState;

impl PushState {
    fn new(n: usize, policy: QueuePolicy) -> Self {
        Self {
            residue: vec![0.0; n],
            reserve: vec![0.0; n],
            queue: WorkQueue::new(policy, n),
            stats: QueryStats::default(),
        }
    }

    pub fn residue(&self) -> &[f64] {
        &self.residue
    }

    pub fn reserve(&self) -> &[f64] {
        &self.reserve
    }

    pub fn stats(&self) -> QueryStats {
        self.stats
    }

    /// Nodes currently waiting to be pushed.
    pub fn queued(&self) -> usize {
        self.queue.len()
    }

    fn finish(self) -> PushOutput {
        PushOutput {
            reserve: ScoreVector::from_dense(&self.reserve),
            residue: ScoreVector::from_dense(&self.residue),
            stats: self.stats,
        }
    }
}

/// Final reserves (the estimate), leftover residues, and counters.
#[derive(Debug, Clone, PartialEq)]
pub struct PushOutput {
    pub reserve: ScoreVector,
    pub residue: ScoreVector,
    pub stats: QueryStats,
}
