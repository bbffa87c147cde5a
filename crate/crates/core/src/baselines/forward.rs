use std::time::Instant;

use super::{PushOutput, PushState, QueuePolicy};
use crate::error::{check_alpha, check_positive, Result};
use crate::graph::{Graph, NodeId};

/// Forward search from source `s`.
///
/// Terminates once every `r^f(s,u) / max(d_out(u), 1) ≤ eps`. A node with no
/// out-edges keeps `α` of its residue and loses the rest.
pub fn forward_search(g: &Graph, s: NodeId, alpha: f64, eps: f64) -> Result<PushOutput> {
    forward_search_with(g, s, alpha, eps, QueuePolicy::Fifo, |_| {})
}

pub fn forward_search_with(
    g: &Graph,
    s: NodeId,
    alpha: f64,
    eps: f64,
    policy: QueuePolicy,
    mut observe: impl FnMut(&PushState),
) -> Result<PushOutput> {
    check_alpha(alpha)?;
    check_positive("eps", eps)?;
    g.check_node(s)?;
    let start = Instant::now();
    let ratio = |r: f64, u: NodeId| r / g.out_degree(u).max(1) as f64;
    let mut st = PushState::new(g.node_count(), policy);
    st.residue[s as usize] = 1.0;
    if ratio(1.0, s) > eps {
        st.queue.offer(s, ratio(1.0, s));
    }
    loop {
        let residue = &st.residue;
        let Some(u) = st.queue.pop(|x| ratio(residue[x as usize], x)) else { break };
        let mass = st.residue[u as usize];
        st.residue[u as usize] = 0.0;
        st.reserve[u as usize] += alpha * mass;
        let out = g.out_neighbors(u);
        if !out.is_empty() {
            let share = (1.0 - alpha) * mass / out.len() as f64;
            for &v in out {
                let r = &mut st.residue[v as usize];
                *r += share;
                let key = ratio(*r, v);
                if key > eps {
                    st.queue.offer(v, key);
                }
            }
        }
        st.stats.push_count += 1;
        st.stats.edge_touches += out.len() as u64;
        observe(&st);
    }
    st.stats.wall_time = start.elapsed();
    Ok(st.finish())
}
