//! Single-target Personalized PageRank.
//!
//! The centerpiece is [`rbs`], a randomized backward search that estimates
//! `π(s, t)` for every source `s` given a fixed target `t`, level by level
//! over walk lengths. Around it sit exact power-iteration oracles
//! ([`exact`]), the classic push and sampling baselines ([`baselines`]),
//! three applications built from single-target queries ([`apps`]), and an
//! evaluation harness ([`harness`]).
//!
//! Every algorithm consumes a [`Graph`] whose in-adjacency lists are sorted
//! ascending by the out-degree of the in-neighbor. Walks that reach a node
//! without out-edges stop there with probability `α` and otherwise vanish,
//! so `Σ_t π(s, t)` may fall below one when such nodes are reachable.

pub mod apps;
pub mod baselines;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod io;
mod parallel;
pub mod rbs;
pub mod rng;
pub mod score;
pub mod stats;

pub use error::{Error, Result};
pub use exact::{DenseVector, View};
pub use graph::{Graph, GraphKind, GraphSource, IdPolicy, InEntry, NodeId};
pub use rbs::{ErrorMode, HopTable, Lambda, RbsConfig, RbsOutput, ThetaRule};
pub use score::ScoreVector;
pub use stats::QueryStats;

/// Decay factor used throughout unless a caller overrides it.
pub const DEFAULT_ALPHA: f64 = 0.2;
