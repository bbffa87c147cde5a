use rand::Rng;

use super::{Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng::seeded;

/// Synthetic graph families used for tests and desk-scale experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    /// Every ordered pair `u != v`.
    Complete,
    /// `i -> i + 1 (mod n)`.
    Cycle,
    /// Leaves `1..n` each point at hub `0`; the hub has no out-edges.
    StarIn,
    /// Directed G(n, p) without self-loops.
    ErdosRenyi { p: f64 },
    /// Preferential attachment: each new node links to `k` distinct earlier
    /// nodes chosen proportionally to degree. Edges are added in both directions.
    PowerLaw { k: usize },
}

pub fn generate_graph(kind: GraphKind, n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let ids = 0..n as NodeId;
    match kind {
        GraphKind::Complete => {
            for u in ids.clone() {
                edges.extend(ids.clone().filter(|&v| v != u).map(|v| (u, v)));
            }
        }
        GraphKind::Cycle => {
            edges.extend(ids.map(|u| (u, ((u as usize + 1) % n) as NodeId)));
        }
        GraphKind::StarIn => {
            edges.extend((1..n as NodeId).map(|leaf| (leaf, 0)));
        }
        GraphKind::ErdosRenyi { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("edge probability must lie in [0, 1], got {p}")));
            }
            // Walk the n(n-1) ordered pairs, jumping over geometric runs of
            // absent edges so the cost is O(n + m) rather than O(n²).
            let mut rng = seeded(seed);
            let pairs = n as u64 * (n as u64 - 1);
            let log_q = (1.0 - p).ln();
            let mut i: u64 = 0;
            while p > 0.0 && i < pairs {
                if p < 1.0 {
                    let skip = ((1.0 - rng.gen::<f64>()).ln() / log_q).floor();
                    if skip >= (pairs - i) as f64 {
                        break;
                    }
                    i += skip as u64;
                }
                let u = i / (n as u64 - 1);
                let j = i % (n as u64 - 1);
                let v = if j < u { j } else { j + 1 };
                edges.push((u as NodeId, v as NodeId));
                i += 1;
            }
        }
        GraphKind::PowerLaw { k } => {
            if k == 0 {
                return Err(Error::invalid("attachment count k must be at least 1"));
            }
            let mut rng = seeded(seed);
            // each node appears here once per incident edge endpoint
            let mut endpoints: Vec<NodeId> = Vec::new();
            let core = (k + 1).min(n);
            for u in 0..core as NodeId {
                for v in 0..u {
                    edges.push((u, v));
                    edges.push((v, u));
                    endpoints.extend([u, v]);
                }
            }
            for u in core as NodeId..n as NodeId {
                let mut chosen: Vec<NodeId> = Vec::with_capacity(k);
                while chosen.len() < k.min(u as usize) {
                    let v = if endpoints.is_empty() {
                        rng.gen_range(0..u)
                    } else {
                        endpoints[rng.gen_range(0..endpoints.len())]
                    };
                    if !chosen.contains(&v) {
                        chosen.push(v);
                    }
                }
                for v in chosen {
                    edges.push((u, v));
                    edges.push((v, u));
                    endpoints.extend([u, v]);
                }
            }
        }
    }
    Graph::build(n, &edges, true, None)
}
