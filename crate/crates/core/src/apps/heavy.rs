use crate::error::{check_positive, Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rbs::{rbs_boosted, ErrorMode, RbsConfig, ThetaRule};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeavyHitterConfig {
    pub phi: f64,
    /// Half-width of the permissible band, as a fraction of `φ nπ(t)`.
    pub c: f64,
    /// `nπ(t)`, the target's PageRank scaled by `n`.
    pub pagerank_of_t: f64,
    /// Maps `δ = cφnπ(t)` to the RBS threshold.
    pub theta_rule: ThetaRule,
}

impl HeavyHitterConfig {
    pub fn new(phi: f64, c: f64, pagerank_of_t: f64) -> Self {
        Self { phi, c, pagerank_of_t, theta_rule: ThetaRule::Experimental }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("phi", self.phi), ("c", self.c)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::invalid(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        check_positive("pagerank_of_t", self.pagerank_of_t)
    }

    /// `φ nπ(t)`.
    pub fn threshold(&self) -> f64 {
        self.phi * self.pagerank_of_t
    }

    /// `δ = c φ nπ(t)`.
    pub fn delta(&self) -> f64 {
        self.c * self.threshold()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HitterClass {
    /// `π(s,t) > (1+c) φ nπ(t)`.
    Absolute,
    /// `(1-c) φ nπ(t) ≤ π(s,t) ≤ (1+c) φ nπ(t)`.
    Permissible,
    NotHitter,
}

impl HitterClass {
    pub fn name(self) -> &'static str {
        match self {
            HitterClass::Absolute => "absolute",
            HitterClass::Permissible => "permissible",
            HitterClass::NotHitter => "not_hitter",
        }
    }
}

/// Band of a PPR value. Values exactly on a band edge are permissible.
pub fn classify(value: f64, cfg: &HeavyHitterConfig) -> HitterClass {
    let base = cfg.threshold();
    if value > (1.0 + cfg.c) * base {
        HitterClass::Absolute
    } else if value >= (1.0 - cfg.c) * base {
        HitterClass::Permissible
    } else {
        HitterClass::NotHitter
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeavyHitter {
    pub node: NodeId,
    pub estimate: f64,
    /// Band of the estimate.
    pub class: HitterClass,
}

/// Returns every `s` with `π̂(s,t) ≥ φ nπ(t)`, ordered by node id.
///
/// The query runs in relative mode with `θ` derived from `δ = cφnπ(t)` by
/// `cfg.theta_rule`; the mode and `θ` of `rbs_cfg` are replaced, while its
/// `α`, seed, boost and level cap are kept.
pub fn heavy_hitters(g: &Graph, t: NodeId, cfg: &HeavyHitterConfig, rbs_cfg: &RbsConfig) -> Result<Vec<HeavyHitter>> {
    cfg.validate()?;
    let theta = cfg.theta_rule.theta(ErrorMode::Relative, cfg.delta(), rbs_cfg.alpha);
    let run = RbsConfig { mode: ErrorMode::Relative, theta, ..rbs_cfg.clone() };
    let out = rbs_boosted(g, t, &run)?;
    let threshold = cfg.threshold();
    Ok(out
        .estimate
        .iter()
        .filter(|&(_, v)| v >= threshold)
        .map(|(node, estimate)| HeavyHitter { node, estimate, class: classify(estimate, cfg) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::power_single_target;
    use crate::graph::{generate_graph, GraphKind};

    #[test]
    fn two_cycle_both_absolute() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let cfg = HeavyHitterConfig::new(0.3, 0.1, 1.0);
        assert_eq!(classify(4.0 / 9.0, &cfg), HitterClass::Absolute);
        assert_eq!(classify(5.0 / 9.0, &cfg), HitterClass::Absolute);
        let hits = heavy_hitters(&g, 1, &cfg, &RbsConfig::relative(1.0).with_boost(9)).unwrap();
        let nodes: Vec<_> = hits.iter().map(|h| h.node).collect();
        assert_eq!(nodes, vec![0, 1]);
        assert!(hits.iter().all(|h| h.class == HitterClass::Absolute));
    }

    #[test]
    fn band_edges_are_permissible() {
        let cfg = HeavyHitterConfig::new(0.5, 0.2, 1.0);
        assert_eq!(classify(0.6, &cfg), HitterClass::Permissible);
        assert_eq!(classify(0.4, &cfg), HitterClass::Permissible);
        assert_eq!(classify(0.399, &cfg), HitterClass::NotHitter);
        assert_eq!(classify(0.601, &cfg), HitterClass::Absolute);
    }

    #[test]
    fn phi_near_one_is_empty() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.05 }, 100, 2).unwrap();
        let truth = power_single_target(&g, 7, 0.2, 100).unwrap();
        let cfg = HeavyHitterConfig::new(0.99, 0.1, truth.sum());
        let max = truth.values.iter().cloned().fold(0.0, f64::max);
        assert!(max < 0.9 * cfg.threshold());
        assert!(heavy_hitters(&g, 7, &cfg, &RbsConfig::relative(1.0)).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let rbs = RbsConfig::relative(1.0);
        for cfg in [
            HeavyHitterConfig::new(0.3, 0.1, 0.0),
            HeavyHitterConfig::new(1.0, 0.1, 1.0),
            HeavyHitterConfig::new(0.3, 0.0, 1.0),
        ] {
            assert!(matches!(heavy_hitters(&g, 1, &cfg, &rbs), Err(Error::InvalidParameter(_))));
        }
    }
}
