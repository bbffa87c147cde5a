//! Metrics, experiment drivers, and statistical checks of the estimator's
//! bias, variance and cost.

mod lemmas;
mod metrics;
mod sampling;
mod tradeoff;
mod truth;

pub use crate::stats::QueryStats;
pub use lemmas::{verify_lemmas, CheckResult, LemmaReport, Slack};
pub use metrics::{f1_heavy_hitters, loglog_slope, max_additive_err, precision_at_k, top_k, Metrics};
pub use sampling::{sample_targets, Sampling};
pub use tradeoff::{run_tradeoff, TradeoffMethod, TradeoffOptions, TradeoffRow};
pub use truth::TruthCache;
