use serde_json::json;

use crate::error::Result;
use crate::exact::{hop_ppr_single_target, power_single_target};
use crate::graph::{Graph, NodeId};
use crate::rbs::{rbs_single_target, Lambda, RbsConfig};
use crate::rng::derive_seed;

/// Statistical tolerances for [`verify_lemmas`]. These are calibration
/// choices and are echoed in every report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slack {
    /// Allowed `|mean - π_ℓ|` in units of `√(Var_bound / trials)`.
    pub se_multiplier: f64,
    /// Allowed ratio of sample variance to the variance bound.
    pub variance: f64,
    /// Allowed ratio of mean edge touches to the cost bound.
    pub cost: f64,
    /// Entries with `π_ℓ(s,t)` at or below this are not tracked.
    pub min_tracked: f64,
}

impl Default for Slack {
    fn default() -> Self {
        Self { se_multiplier: 4.0, variance: 1.3, cost: 1.2, min_tracked: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub bound: f64,
    pub observed: f64,
    pub pass: bool,
    /// Number of `(s, ℓ)` entries the check covered (1 for scalar checks).
    pub entries: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub target: NodeId,
    pub config: RbsConfig,
    pub trials: usize,
    pub slack: Slack,
    pub checks: Vec<CheckResult>,
    /// `Σ_u λ(u) π(u,t) / (αθ)` before slack.
    pub cost_bound: f64,
    pub mean_edge_touches: f64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "target": self.target,
            "config": self.config.to_json(),
            "trials": self.trials,
            "slack": {
                "se_multiplier": self.slack.se_multiplier,
                "variance": self.slack.variance,
                "cost": self.slack.cost,
                "min_tracked": self.slack.min_tracked,
            },
            "cost_bound": self.cost_bound,
            "mean_edge_touches": self.mean_edge_touches,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "bound": c.bound,
                "observed": c.observed,
                "pass": c.pass,
                "entries": c.entries,
            })).collect::<Vec<_>>(),
            "pass": self.passed(),
        })
    }
}

/// Runs `trials` independent queries and checks, against the exact hop
/// oracle, that each level estimate is unbiased, that its variance respects
/// the bound for the configured `λ`, that estimates only appear on nodes that
/// can reach `t`, and that mean cost respects the expected-cost bound.
///
/// Intended for graphs small enough for dense `(L+1) × n` accumulators.
pub fn verify_lemmas(g: &Graph, t: NodeId, cfg: &RbsConfig, trials: usize) -> Result<LemmaReport> {
    verify_lemmas_with(g, t, cfg, trials, Slack::default())
}

pub fn verify_lemmas_with(g: &Graph, t: NodeId, cfg: &RbsConfig, trials: usize, slack: Slack) -> Result<LemmaReport> {
    cfg.validate()?;
    if trials < 2 {
        return Err(crate::Error::invalid("need at least two trials for a sample variance"));
    }
    let n = g.node_count();
    let levels = cfg.levels();
    let (alpha, theta) = (cfg.alpha, cfg.theta);
    let oracle = hop_ppr_single_target(g, t, alpha, levels)?;

    let trials_f = trials as f64;
    let var_bound = |pi: f64| match cfg.lambda() {
        Lambda::Unit => theta * pi,
        Lambda::SqrtOutDeg => alpha * theta * theta,
    };
    // Deviations from the oracle are accumulated only on tracked entries, which
    // keeps the sums free of cancellation when the estimator is deterministic.
    let mut tracked: Vec<(usize, f64)> = Vec::new();
    let mut reachable = vec![false; (levels + 1) * n];
    for (ell, hop) in oracle.iter().enumerate() {
        for s in 0..n {
            let pi = hop.values[s];
            reachable[ell * n + s] = pi != 0.0;
            if pi > slack.min_tracked {
                tracked.push((ell * n + s, pi));
            }
        }
    }
    let mut dev = vec![0.0; tracked.len()];
    let mut dev_sq = vec![0.0; tracked.len()];
    let mut scratch = vec![0.0; (levels + 1) * n];
    let (mut touches, mut stray) = (0.0, 0usize);
    for trial in 0..trials {
        let run_cfg = RbsConfig { seed: derive_seed(cfg.seed, trial as u64), boost: 1, ..cfg.clone() };
        let out = rbs_single_target(g, t, &run_cfg)?;
        touches += out.stats.edge_touches as f64;
        for (ell, level) in out.hops.levels().iter().enumerate() {
            for (s, v) in level.iter() {
                let i = ell * n + s as usize;
                if !reachable[i] {
                    stray += 1;
                }
                scratch[i] = v;
            }
        }
        for (j, &(i, pi)) in tracked.iter().enumerate() {
            let d = scratch[i] - pi;
            dev[j] += d;
            dev_sq[j] += d * d;
        }
        for (ell, level) in out.hops.levels().iter().enumerate() {
            for (s, _) in level.iter() {
                scratch[ell * n + s as usize] = 0.0;
            }
        }
    }

    let (mut max_z, mut max_ratio) = (0.0f64, 0.0f64);
    for (j, &(_, pi)) in tracked.iter().enumerate() {
        let bound = var_bound(pi);
        let bias = dev[j] / trials_f;
        let sample_var = ((dev_sq[j] - trials_f * bias * bias) / (trials_f - 1.0)).max(0.0);
        max_z = max_z.max(bias.abs() / (bound / trials_f).sqrt());
        max_ratio = max_ratio.max(sample_var / bound);
    }
    let tracked = tracked.len();

    let truth = power_single_target(g, t, alpha, 400)?;
    let weighted: f64 = g.nodes().map(|u| cfg.lambda().weight(g.out_degree(u)) * truth.get(u)).sum();
    let cost_bound = weighted / (alpha * theta);
    let mean_touches = touches / trials_f;

    let checks = vec![
        CheckResult {
            name: "unbiasedness",
            bound: slack.se_multiplier,
            observed: max_z,
            pass: max_z <= slack.se_multiplier,
            entries: tracked,
        },
        CheckResult {
            name: "variance",
            bound: slack.variance,
            observed: max_ratio,
            pass: max_ratio <= slack.variance,
            entries: tracked,
        },
        CheckResult {
            name: "support",
            bound: 0.0,
            observed: stray as f64,
            pass: stray == 0,
            entries: (levels + 1) * n,
        },
        CheckResult {
            name: "cost",
            bound: slack.cost * cost_bound,
            observed: mean_touches,
            pass: mean_touches <= slack.cost * cost_bound,
            entries: 1,
        },
    ];
    Ok(LemmaReport {
        target: t,
        config: cfg.clone(),
        trials,
        slack,
        checks,
        cost_bound,
        mean_edge_touches: mean_touches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_graph;
    use crate::graph::GraphKind;

    #[test]
    fn two_cycle_unit_mode() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let report = verify_lemmas(&g, 1, &RbsConfig::relative(1e-2).with_seed(5), 20_000).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        assert!(report.check("unbiasedness").unwrap().entries > 10);
    }

    #[test]
    fn deterministic_limit_has_no_variance() {
        let g = generate_graph(GraphKind::Cycle, 3, 0).unwrap();
        let cfg = RbsConfig::relative(1e-12).with_max_level(15);
        let report = verify_lemmas(&g, 0, &cfg, 50).unwrap();
        assert!(report.passed());
        assert!(report.check("unbiasedness").unwrap().observed < 1e-6);
        assert!(report.check("variance").unwrap().observed < 1e-12);
    }

    #[test]
    fn report_json_shape() {
        let g = generate_graph(GraphKind::Cycle, 3, 0).unwrap();
        let report = verify_lemmas(&g, 0, &RbsConfig::additive(0.05), 10).unwrap();
        let v = report.to_json();
        assert_eq!(v["checks"].as_array().unwrap().len(), 4);
        for c in v["checks"].as_array().unwrap() {
            assert!(c["bound"].is_number() && c["observed"].is_number() && c["pass"].is_boolean());
        }
        assert_eq!(v["slack"]["variance"], 1.3);
    }
}
