use std::time::Instant;

use super::{PushOutput, PushState, QueuePolicy};
use crate::error::{check_alpha, check_positive, Result};
use crate::graph::{Graph, NodeId};

/// Backward search for target `t` with the default FIFO queue.
///
/// Every final residue is at most `eps`, which gives
/// `π^b(s,t) ≤ π(s,t) ≤ π^b(s,t) + eps` for all `s`.
pub fn backward_search(g: &Graph, t: NodeId, alpha: f64, eps: f64) -> Result<PushOutput> {
    backward_search_with(g, t, alpha, eps, QueuePolicy::Fifo, |_| {})
}

/// Backward search with an explicit queue policy. `observe` sees the state
/// after every push.
pub fn backward_search_with(
    g: &Graph,
    t: NodeId,
    alpha: f64,
    eps: f64,
    policy: QueuePolicy,
    mut observe: impl FnMut(&PushState),
) -> Result<PushOutput> {
    check_alpha(alpha)?;
    check_positive("eps", eps)?;
    g.check_node(t)?;
    let start = Instant::now();
    let mut st = PushState::new(g.node_count(), policy);
    st.residue[t as usize] = 1.0;
    if 1.0 > eps {
        st.queue.offer(t, 1.0);
    }
    loop {
        let residue = &st.residue;
        let Some(v) = st.queue.pop(|u| residue[u as usize]) else { break };
        let mass = st.residue[v as usize];
        st.residue[v as usize] = 0.0;
        st.reserve[v as usize] += alpha * mass;
        let in_list = g.in_neighbors(v);
        for e in in_list {
            let r = &mut st.residue[e.node as usize];
            *r += (1.0 - alpha) * mass / e.out_degree as f64;
            if *r > eps {
                let key = *r;
                st.queue.offer(e.node, key);
            }
        }
        st.stats.push_count += 1;
        st.stats.edge_touches += in_list.len() as u64;
        observe(&st);
    }
    st.stats.wall_time = start.elapsed();
    Ok(st.finish())
}
