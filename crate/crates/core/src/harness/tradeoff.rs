use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::{max_additive_err, precision_at_k, sample_targets, Sampling, TruthCache};
use crate::baselines::backward_search;
use crate::error::{Error, Result};
use crate::exact::{iterations_for, power_single_target, View};
use crate::graph::{Graph, NodeId};
use crate::parallel::with_workers;
use crate::rbs::{rbs_boosted, ErrorMode, RbsConfig, ThetaRule};
use crate::rng::derive_seed;
use crate::score::ScoreVector;
use crate::stats::QueryStats;

/// Single-target methods a sweep can drive. The sweep parameter is the
/// method's error parameter (`ε` or `δ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TradeoffMethod {
    /// Power iteration run for `⌈log_{1-α} param⌉` rounds.
    Power,
    BackwardSearch,
    RbsAdditive,
    RbsRelative,
}

impl TradeoffMethod {
    pub fn id(self) -> &'static str {
        match self {
            TradeoffMethod::Power => "power",
            TradeoffMethod::BackwardSearch => "bs",
            TradeoffMethod::RbsAdditive => "rbs-additive",
            TradeoffMethod::RbsRelative => "rbs-relative",
        }
    }
}

impl FromStr for TradeoffMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(TradeoffMethod::Power),
            "bs" => Ok(TradeoffMethod::BackwardSearch),
            "rbs-additive" => Ok(TradeoffMethod::RbsAdditive),
            "rbs-relative" => Ok(TradeoffMethod::RbsRelative),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TradeoffOptions {
    pub alpha: f64,
    pub sampling: Sampling,
    pub target_count: usize,
    pub seed: u64,
    /// `k` for Precision@k, capped at `n`.
    pub k: usize,
    pub boost: usize,
    pub theta_rule: ThetaRule,
    pub truth_iters: usize,
    pub cache: TruthCache,
    pub record_wall_time: bool,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
}

impl Default for TradeoffOptions {
    fn default() -> Self {
        Self {
            alpha: crate::DEFAULT_ALPHA,
            sampling: Sampling::DegreeWeighted,
            target_count: 100,
            seed: 0,
            k: 50,
            boost: 1,
            theta_rule: ThetaRule::Experimental,
            truth_iters: crate::exact::ground_truth_iterations(crate::DEFAULT_ALPHA),
            cache: TruthCache::default(),
            record_wall_time: false,
            workers: 0,
        }
    }
}

/// One CSV row: `method,param,metric_name,metric_value,edge_touches,wall_ms`.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffRow {
    pub method: &'static str,
    pub param: f64,
    pub metric_name: &'static str,
    pub metric_value: f64,
    pub edge_touches: f64,
    pub wall_ms: Option<f64>,
}

impl TradeoffRow {
    pub const HEADER: &'static str = "method,param,metric_name,metric_value,edge_touches,wall_ms";

    pub fn write_csv<W: Write>(rows: &[TradeoffRow], mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", Self::HEADER)?;
        for r in rows {
            let wall = r.wall_ms.map(|x| x.to_string()).unwrap_or_default();
            writeln!(w, "{},{},{},{},{},{}", r.method, r.param, r.metric_name, r.metric_value, r.edge_touches, wall)?;
        }
        Ok(())
    }
}

/// Sweeps `method` over `sweep`, averaging MaxAdditiveErr, Precision@k, edge
/// touches and (optionally) wall time over sampled targets. Targets are drawn
/// once and shared by every sweep point.
pub fn run_tradeoff(
    g: &Graph,
    method: TradeoffMethod,
    sweep: &[f64],
    opts: &TradeoffOptions,
) -> Result<Vec<TradeoffRow>> {
    if sweep.is_empty() {
        return Err(Error::invalid("sweep must contain at least one value"));
    }
    let targets = sample_targets(g, opts.sampling, opts.target_count, opts.seed)?;
    let truths = targets
        .iter()
        .map(|&t| opts.cache.get(g, View::Target(t), opts.alpha, opts.truth_iters))
        .collect::<Result<Vec<_>>>()?;
    let k = opts.k.min(g.node_count());

    let mut rows = Vec::new();
    for &param in sweep {
        let runs: Vec<(ScoreVector, QueryStats)> = with_workers(opts.workers, || {
            targets
                .par_iter()
                .enumerate()
                .map(|(i, &t)| run_one(g, method, t, param, derive_seed(opts.seed, i as u64), opts))
                .collect::<Result<Vec<_>>>()
        })?;
        let count = runs.len() as f64;
        let (mut err, mut prec, mut touches, mut wall) = (0.0, 0.0, 0.0, 0.0);
        for ((est, stats), truth) in runs.iter().zip(&truths) {
            err += max_additive_err(truth, est)?;
            prec += precision_at_k(truth, est, k)?;
            touches += stats.edge_touches as f64;
            wall += stats.wall_time.as_secs_f64() * 1e3;
        }
        let wall_ms = opts.record_wall_time.then_some(wall / count);
        for (metric_name, total) in [("max_additive_err", err), ("precision_at_k", prec)] {
            rows.push(TradeoffRow {
                method: method.id(),
                param,
                metric_name,
                metric_value: total / count,
                edge_touches: touches / count,
                wall_ms,
            });
        }
    }
    Ok(rows)
}

fn run_one(
    g: &Graph,
    method: TradeoffMethod,
    t: NodeId,
    param: f64,
    seed: u64,
    opts: &TradeoffOptions,
) -> Result<(ScoreVector, QueryStats)> {
    let rbs = |mode: ErrorMode| -> Result<(ScoreVector, QueryStats)> {
        let theta = opts.theta_rule.theta(mode, param, opts.alpha);
        let cfg = RbsConfig::new(mode, theta).with_alpha(opts.alpha).with_seed(seed).with_boost(opts.boost);
        let out = rbs_boosted(g, t, &cfg)?;
        Ok((out.estimate, out.stats))
    };
    match method {
        TradeoffMethod::Power => {
            let start = Instant::now();
            let iters = iterations_for(opts.alpha, param);
            let v = power_single_target(g, t, opts.alpha, iters)?;
            let stats = QueryStats {
                push_count: (iters * g.node_count()) as u64,
                edge_touches: (iters * g.edge_count()) as u64,
                wall_time: start.elapsed(),
            };
            Ok((ScoreVector::from_dense(&v.values), stats))
        }
        TradeoffMethod::BackwardSearch => {
            let out = backward_search(g, t, opts.alpha, param)?;
            Ok((out.reserve, out.stats))
        }
        TradeoffMethod::RbsAdditive => rbs(ErrorMode::Additive),
        TradeoffMethod::RbsRelative => rbs(ErrorMode::Relative),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphKind};

    #[test]
    fn exact_method_has_zero_error() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.1 }, 40, 1).unwrap();
        let opts = TradeoffOptions { target_count: 1, k: 5, ..Default::default() };
        let rows = run_tradeoff(&g, TradeoffMethod::Power, &[1e-7], &opts).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].metric_name, "max_additive_err");
        assert_eq!(rows[0].metric_value, 0.0);
        assert_eq!(rows[1].metric_value, 1.0);
    }

    #[test]
    fn unknown_method_id() {
        assert!(matches!("pagerank".parse::<TradeoffMethod>(), Err(Error::UnknownMethod(_))));
        assert_eq!("rbs-relative".parse::<TradeoffMethod>().unwrap(), TradeoffMethod::RbsRelative);
    }

    #[test]
    fn csv_is_reproducible() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.05 }, 100, 3).unwrap();
        let opts = TradeoffOptions { target_count: 5, seed: 4, k: 10, ..Default::default() };
        let render = || {
            let rows = run_tradeoff(&g, TradeoffMethod::RbsAdditive, &[1e-2, 1e-3], &opts).unwrap();
            let mut buf = Vec::new();
            TradeoffRow::write_csv(&rows, &mut buf).unwrap();
            buf
        };
        let a = render();
        assert_eq!(a, render());
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(TradeoffRow::HEADER));
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().skip(1).all(|l| l.ends_with(',')));
    }

    #[test]
    fn backward_search_sweep_within_eps() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.05 }, 200, 6).unwrap();
        let sweep = [1e-1, 1e-2, 1e-3, 1e-4];
        let opts = TradeoffOptions { target_count: 10, seed: 1, truth_iters: 200, ..Default::default() };
        let rows = run_tradeoff(&g, TradeoffMethod::BackwardSearch, &sweep, &opts).unwrap();
        for r in rows.iter().filter(|r| r.metric_name == "max_additive_err") {
            assert!(r.metric_value <= r.param, "{r:?}");
        }
    }
}
