use std::time::Instant;

use super::{rbs_single_target, HopTable, RbsConfig, RbsOutput};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::derive_seed;
use crate::score::ScoreVector;
use crate::stats::QueryStats;

/// Median of `cfg.boost` independent runs, taken per node and per level; the
/// level medians are then summed.
///
/// Copy 0 runs with `cfg.seed` itself, so `boost = 1` is exactly
/// [`rbs_single_target`]. Stats are summed over copies.
pub fn rbs_boosted(g: &Graph, t: NodeId, cfg: &RbsConfig) -> Result<RbsOutput> {
    cfg.validate()?;
    let k = cfg.boost;
    if k.is_multiple_of(2) {
        return Err(Error::invalid(format!("boost must be odd for a well-defined median, got {k}")));
    }
    if k == 1 {
        return rbs_single_target(g, t, cfg);
    }
    let start = Instant::now();
    let mut stats = QueryStats::default();
    let mut runs = Vec::with_capacity(k);
    for copy in 0..k {
        let seed = if copy == 0 { cfg.seed } else { derive_seed(cfg.seed, copy as u64) };
        let out = rbs_single_target(g, t, &RbsConfig { seed, ..cfg.clone() })?;
        stats += out.stats;
        runs.push(out.hops);
    }
    let hops = median_hops(&runs);
    let estimate = hops.total();
    stats.wall_time = start.elapsed();
    Ok(RbsOutput { hops, estimate, stats })
}

/// Entrywise median over tables of equal depth; absent entries count as zero.
pub(crate) fn median_hops(runs: &[HopTable]) -> HopTable {
    let k = runs.len();
    let depth = runs.iter().map(HopTable::len).max().unwrap_or(0);
    let levels = (0..depth)
        .map(|ell| {
            let mut pairs: Vec<(NodeId, f64)> =
                runs.iter().filter_map(|r| r.level(ell)).flat_map(|l| l.iter()).collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
            let mut medians = Vec::new();
            let mut i = 0;
            while i < pairs.len() {
                let node = pairs[i].0;
                let j = i + pairs[i..].iter().take_while(|p| p.0 == node).count();
                let present = &pairs[i..j];
                if let Some(m) = median_with_zeros(present.iter().map(|p| p.1), present.len(), k) {
                    medians.push((node, m));
                }
                i = j;
            }
            ScoreVector::from_pairs(medians)
        })
        .collect();
    HopTable::from_levels(levels)
}

/// Median of `k` values of which only the `present` sorted nonnegative ones are
/// given and the rest are zero.
fn median_with_zeros(sorted: impl Iterator<Item = f64>, present: usize, k: usize) -> Option<f64> {
    let zeros = k - present;
    let mid = k / 2;
    if mid < zeros {
        return None;
    }
    sorted.into_iter().nth(mid - zeros).filter(|&v| v != 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_graph;
    use crate::graph::GraphKind;

    #[test]
    fn single_copy_reduces_to_plain_run() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.1 }, 60, 5).unwrap();
        let cfg = RbsConfig::relative(1e-3).with_seed(17);
        let a = rbs_boosted(&g, 4, &cfg).unwrap();
        let b = rbs_single_target(&g, 4, &cfg).unwrap();
        assert_eq!(a.hops, b.hops);
        assert_eq!(a.estimate, b.estimate);
    }

    #[test]
    fn even_boost_rejected() {
        let g = generate_graph(GraphKind::Cycle, 3, 0).unwrap();
        assert!(rbs_boosted(&g, 0, &RbsConfig::relative(0.1).with_boost(4)).is_err());
    }

    #[test]
    fn median_treats_missing_as_zero() {
        let run = |pairs: Vec<(NodeId, f64)>| HopTable::from_levels(vec![ScoreVector::from_pairs(pairs)]);
        let runs = vec![run(vec![(0, 1.0), (1, 5.0)]), run(vec![(0, 3.0)]), run(vec![(0, 2.0), (2, 7.0)])];
        let m = median_hops(&runs);
        // node 0: median(1,3,2) = 2; node 1: median(5,0,0) = 0; node 2: median(0,0,7) = 0
        assert_eq!(m.level(0).unwrap().entries(), &[(0, 2.0)]);

        let runs = vec![run(vec![(4, 1.0)]), run(vec![(4, 3.0)]), run(vec![])];
        assert_eq!(median_hops(&runs).level(0).unwrap().entries(), &[(4, 1.0)]);
    }

    #[test]
    fn two_cycle_boosted_is_close() {
        // δ = 0.05, θ = δ/30, k = 9: most seeds land within δ·(4/9)·2 of 4/9
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let theta = 0.05 / 30.0;
        let trials = 200;
        let ok = (0..trials)
            .filter(|&seed| {
                let cfg = RbsConfig::relative(theta).with_seed(seed).with_boost(9);
                let est = rbs_boosted(&g, 1, &cfg).unwrap().estimate.get(0);
                (est - 4.0 / 9.0).abs() <= 4.0 / 90.0
            })
            .count();
        assert!(ok as f64 / trials as f64 > 0.95, "{ok}/{trials}");
    }
}
