use std::time::Instant;

use super::{HopTable, RbsConfig, RbsOutput};
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::rng::PushRng;
use crate::score::ScoreVector;
use crate::stats::QueryStats;

/// One randomized backward search for target `t`.
///
/// Levels are processed in order and, within a level, nodes in ascending id
/// order. The uniform used by the push of `v` at level `ℓ` is addressed by
/// `(seed, ℓ, v)`, so results are reproducible for a fixed seed.
pub fn rbs_single_target(g: &Graph, t: NodeId, cfg: &RbsConfig) -> Result<RbsOutput> {
    cfg.validate()?;
    g.check_node(t)?;
    let start = Instant::now();
    let alpha = cfg.alpha;
    let alpha_theta = alpha * cfg.theta;
    let lambda = cfg.lambda();
    let mut rng = PushRng::new(cfg.seed);
    let mut stats = QueryStats::default();

    let mut next = vec![0.0; g.node_count()];
    let mut touched: Vec<NodeId> = Vec::new();
    let mut levels = vec![ScoreVector::from_pairs(vec![(t, alpha)])];

    for ell in 0..cfg.levels() {
        let current = levels.last().unwrap();
        for (v, mass) in current.iter() {
            stats.push_count += 1;
            let list = g.in_neighbors(v);
            let share = (1.0 - alpha) * mass;
            // u takes the exact share iff d_out(u) ≤ λ(u)·scale
            let scale = share / alpha_theta;
            let mut i = 0;
            while let Some(e) = list.get(i) {
                if e.out_degree as f64 > lambda.weight(e.out_degree) * scale {
                    break;
                }
                add(&mut next, &mut touched, e.node, share / e.out_degree as f64);
                i += 1;
            }
            if i < list.len() {
                let scale = scale / rng.draw(ell, v);
                while let Some(e) = list.get(i) {
                    let weight = lambda.weight(e.out_degree);
                    if e.out_degree as f64 > weight * scale {
                        break;
                    }
                    add(&mut next, &mut touched, e.node, alpha_theta / weight);
                    i += 1;
                }
            }
            // entries examined, counting the one that stopped the scan
            stats.edge_touches += (i + usize::from(i < list.len())) as u64;
        }
        let level = ScoreVector::gather(&next, &mut touched);
        for &u in &touched {
            next[u as usize] = 0.0;
        }
        touched.clear();
        levels.push(level);
    }

    let hops = HopTable::from_levels(levels);
    let estimate = hops.total();
    stats.wall_time = start.elapsed();
    Ok(RbsOutput { hops, estimate, stats })
}

#[inline]
fn add(next: &mut [f64], touched: &mut Vec<NodeId>, u: NodeId, amount: f64) {
    let slot = &mut next[u as usize];
    if *slot == 0.0 {
        touched.push(u);
    }
    *slot += amount;
}
