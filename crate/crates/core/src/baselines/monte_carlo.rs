use rand::Rng;

use crate::error::{check_alpha, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::seeded;
use crate::score::ScoreVector;

/// Fraction of `walks` α-discounted walks from `s` that stop at each node.
///
/// Each step first flips the stop coin, then picks a uniform out-neighbor.
/// A walk that must move from a node without out-edges is dropped.
pub fn monte_carlo_single_source(g: &Graph, s: NodeId, alpha: f64, walks: u64, seed: u64) -> Result<ScoreVector> {
    check_alpha(alpha)?;
    g.check_node(s)?;
    if walks == 0 {
        return Err(crate::Error::invalid("walks must be at least 1"));
    }
    let mut rng = seeded(seed);
    let mut hits = vec![0u64; g.node_count()];
    for _ in 0..walks {
        let mut cur = s;
        loop {
            if rng.gen::<f64>() < alpha {
                hits[cur as usize] += 1;
                break;
            }
            let out = g.out_neighbors(cur);
            if out.is_empty() {
                break;
            }
            cur = out[rng.gen_range(0..out.len())];
        }
    }
    let scale = 1.0 / walks as f64;
    Ok(hits.iter().enumerate().filter(|(_, &h)| h > 0).map(|(u, &h)| (u as NodeId, h as f64 * scale)).collect())
}
