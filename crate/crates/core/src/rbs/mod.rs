//! Randomized backward search.
//!
//! Starting from `π̂_0 = α e_t`, each level pushes every nonzero
//! `π̂_ℓ(v, t)` to the in-neighbors of `v`. In-neighbors with small
//! out-degree receive their exact share `(1-α) π̂_ℓ(v,t) / d_out(u)`; the
//! rest share a single uniform draw and each receives a fixed quantum
//! `αθ / λ(u)` with probability matching its exact share. Every per-level
//! estimate is unbiased for the `ℓ`-hop PPR value, and the expected number
//! of in-entries examined is at most `Σ_u λ(u) π(u,t) / (αθ)`.

mod boost;
mod config;
mod hops;
mod search;

pub use boost::rbs_boosted;
pub use config::{truncation_level, ErrorMode, Lambda, RbsConfig, ThetaRule};
pub use hops::HopTable;
pub use search::rbs_single_target;

use crate::score::ScoreVector;
use crate::stats::QueryStats;

/// Result of a single-target query.
#[derive(Debug, Clone, PartialEq)]
pub struct RbsOutput {
    /// `π̂_ℓ(·, t)` for `ℓ = 0..=L`.
    pub hops: HopTable,
    /// `π̂(·, t) = Σ_ℓ π̂_ℓ(·, t)`.
    pub estimate: ScoreVector,
    pub stats: QueryStats,
}
