//! Power-iteration ground truth.
//!
//! Both iterations start from the zero vector, so after `k` rounds every
//! entry is a lower bound within `(1 - α)^k` of the true value.

use crate::error::{check_alpha, Result};
use crate::graph::{Graph, NodeId};

/// Which slice of the PPR matrix a dense vector holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    /// `π(s, ·)`
    Source(NodeId),
    /// `π(·, t)`
    Target(NodeId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    pub values: Vec<f64>,
    pub view: View,
}

impl DenseVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, u: NodeId) -> f64 {
        self.values[u as usize]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Rounds needed for `(1 - α)^k ≤ 1e-7`.
pub fn ground_truth_iterations(alpha: f64) -> usize {
    iterations_for(alpha, 1e-7)
}

/// Smallest `k` with `(1 - α)^k ≤ err`.
pub fn iterations_for(alpha: f64, err: f64) -> usize {
    if err >= 1.0 {
        return 0;
    }
    let k = (err.ln() / (1.0 - alpha).ln()).ceil().max(0.0) as usize;
    // guard against ln rounding either way
    if (1.0 - alpha).powi(k as i32) > err {
        k + 1
    } else if k > 0 && (1.0 - alpha).powi(k as i32 - 1) <= err {
        k - 1
    } else {
        k
    }
}

/// `π(s, ·)` after `iters` rounds of `x ← (1-α) x P + α e_s`.
pub fn power_single_source(g: &Graph, s: NodeId, alpha: f64, iters: usize) -> Result<DenseVector> {
    check_alpha(alpha)?;
    g.check_node(s)?;
    let n = g.node_count();
    let mut x = vec![0.0; n];
    let mut next = vec![0.0; n];
    for _ in 0..iters {
        next.iter_mut().for_each(|v| *v = 0.0);
        next[s as usize] = alpha;
        for u in g.nodes() {
            let mass = x[u as usize];
            let d = g.out_degree(u);
            if mass == 0.0 || d == 0 {
                continue;
            }
            let share = (1.0 - alpha) * mass / d as f64;
            for &v in g.out_neighbors(u) {
                next[v as usize] += share;
            }
        }
        std::mem::swap(&mut x, &mut next);
    }
    Ok(DenseVector { values: x, view: View::Source(s) })
}

/// `π(·, t)` after `iters` rounds of `x ← (1-α) x Pᵀ + α e_t`.
pub fn power_single_target(g: &Graph, t: NodeId, alpha: f64, iters: usize) -> Result<DenseVector> {
    check_alpha(alpha)?;
    g.check_node(t)?;
    let n = g.node_count();
    let mut x = vec![0.0; n];
    let mut next = vec![0.0; n];
    for _ in 0..iters {
        for u in g.nodes() {
            let d = g.out_degree(u);
            let mut acc = 0.0;
            if d > 0 {
                let sum: f64 = g.out_neighbors(u).iter().map(|&v| x[v as usize]).sum();
                acc = (1.0 - alpha) * sum / d as f64;
            }
            next[u as usize] = acc;
        }
        next[t as usize] += alpha;
        std::mem::swap(&mut x, &mut next);
    }
    Ok(DenseVector { values: x, view: View::Target(t) })
}

/// Per-hop vectors `π_ℓ(·, t)` for `ℓ = 0..=levels`.
///
/// `π_0 = α e_t` and `π_{ℓ+1}(u) = Σ_{v ∈ N_out(u)} (1-α) π_ℓ(v) / d_out(u)`.
pub fn hop_ppr_single_target(g: &Graph, t: NodeId, alpha: f64, levels: usize) -> Result<Vec<DenseVector>> {
    check_alpha(alpha)?;
    g.check_node(t)?;
    let n = g.node_count();
    let mut first = vec![0.0; n];
    first[t as usize] = alpha;
    let mut hops = vec![DenseVector { values: first, view: View::Target(t) }];
    for _ in 0..levels {
        let prev = &hops.last().unwrap().values;
        let next: Vec<f64> = g
            .nodes()
            .map(|u| {
                let d = g.out_degree(u);
                if d == 0 {
                    return 0.0;
                }
                let sum: f64 = g.out_neighbors(u).iter().map(|&v| prev[v as usize]).sum();
                (1.0 - alpha) * sum / d as f64
            })
            .collect();
        hops.push(DenseVector { values: next, view: View::Target(t) });
    }
    Ok(hops)
}

/// All single-source vectors, row `s` holding `π(s, ·)`.
pub fn ppr_matrix(g: &Graph, alpha: f64, iters: usize) -> Result<Vec<Vec<f64>>> {
    g.nodes().map(|s| power_single_source(g, s, alpha, iters).map(|d| d.values)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphKind};

    const ALPHA: f64 = 0.2;

    fn two_cycle() -> Graph {
        Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn iteration_count_matches_log_rule() {
        // log_{0.8} 1e-7 = 72.2...
        assert_eq!(ground_truth_iterations(0.2), 73);
        assert_eq!(iterations_for(0.5, 0.25), 2);
        assert_eq!(iterations_for(0.2, 1.0), 0);
    }

    #[test]
    fn two_cycle_closed_form() {
        // geometric series: α / (1 - (1-α)^2) = 5/9, α(1-α) / (1 - (1-α)^2) = 4/9
        let g = two_cycle();
        let src = power_single_source(&g, 0, ALPHA, 200).unwrap();
        assert!((src.get(0) - 5.0 / 9.0).abs() < 1e-12);
        assert!((src.get(1) - 4.0 / 9.0).abs() < 1e-12);
        let tgt = power_single_target(&g, 1, ALPHA, 200).unwrap();
        assert!((tgt.get(0) - 4.0 / 9.0).abs() < 1e-12);
        assert!((tgt.get(1) - 5.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn star_leaf_to_dangling_hub() {
        let g = generate_graph(GraphKind::StarIn, 5, 0).unwrap();
        let v = power_single_source(&g, 3, ALPHA, 100).unwrap();
        assert!((v.get(0) - 0.16).abs() < 1e-15);
        assert!((v.get(3) - 0.2).abs() < 1e-15);
        // mass that reaches the hub without stopping is lost
        assert!((v.sum() - 0.36).abs() < 1e-15);
    }

    #[test]
    fn target_without_in_edges() {
        let g = generate_graph(GraphKind::StarIn, 5, 0).unwrap();
        let v = power_single_target(&g, 2, ALPHA, 50).unwrap();
        let mut expected = vec![0.0; 5];
        expected[2] = ALPHA;
        assert_eq!(v.values, expected);
    }

    #[test]
    fn source_and_target_views_agree() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.1 }, 40, 5).unwrap();
        let iters = 60;
        let tol = 2.0 * (1.0 - ALPHA).powi(iters as i32);
        let rows = ppr_matrix(&g, ALPHA, iters).unwrap();
        for t in [0, 7, 39] {
            let col = power_single_target(&g, t, ALPHA, iters).unwrap();
            for s in g.nodes() {
                assert!((col.get(s) - rows[s as usize][t as usize]).abs() <= tol);
            }
        }
    }

    #[test]
    fn hop_vectors_on_two_cycle() {
        let hops = hop_ppr_single_target(&two_cycle(), 1, ALPHA, 8).unwrap();
        for (l, h) in hops.iter().enumerate() {
            let expect_0 = if l % 2 == 1 { ALPHA * (1.0 - ALPHA).powi(l as i32) } else { 0.0 };
            assert!((h.get(0) - expect_0).abs() < 1e-15, "level {l}");
        }
        assert_eq!(hops[0].values, vec![0.0, ALPHA]);
    }

    #[test]
    fn first_hop_is_one_push() {
        let g = Graph::from_edges(3, &[(0, 2), (0, 1), (1, 2)]).unwrap();
        let hops = hop_ppr_single_target(&g, 2, ALPHA, 1).unwrap();
        assert!((hops[1].get(0) - ALPHA * (1.0 - ALPHA) / 2.0).abs() < 1e-15);
        assert!((hops[1].get(1) - ALPHA * (1.0 - ALPHA)).abs() < 1e-15);
    }

    #[test]
    fn truncation_bound() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.08 }, 50, 2).unwrap();
        let t = 4;
        let truth = power_single_target(&g, t, ALPHA, 200).unwrap();
        for levels in [0, 3, 10] {
            let hops = hop_ppr_single_target(&g, t, ALPHA, levels).unwrap();
            let bound = (1.0 - ALPHA).powi(levels as i32 + 1);
            for s in g.nodes() {
                let partial: f64 = hops.iter().map(|h| h.get(s)).sum();
                let gap = truth.get(s) - partial;
                assert!(gap >= -1e-15 && gap <= bound + 1e-15, "s={s} L={levels} gap={gap}");
            }
        }
    }

    #[test]
    fn mass_identity_without_dangling_nodes() {
        let g = generate_graph(GraphKind::PowerLaw { k: 2 }, 30, 8).unwrap();
        let iters = 150;
        let rows = ppr_matrix(&g, ALPHA, iters).unwrap();
        let total: f64 = rows.iter().flatten().sum();
        assert!((total - 30.0).abs() < 1e-9);
        for t in [0u32, 11] {
            let col = power_single_target(&g, t, ALPHA, iters).unwrap();
            let by_rows: f64 = rows.iter().map(|r| r[t as usize]).sum();
            assert!((col.sum() - by_rows).abs() < 1e-9);
        }
    }

    #[test]
    fn error_shrinks_geometrically() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.1 }, 30, 1).unwrap();
        let t = g.nodes().max_by_key(|&v| g.in_degree(v)).unwrap();
        let truth = power_single_target(&g, t, ALPHA, 300).unwrap();
        let mut last = f64::INFINITY;
        for k in [5i32, 10, 20, 40] {
            let v = power_single_target(&g, t, ALPHA, k as usize).unwrap();
            let err = g.nodes().map(|s| truth.get(s) - v.get(s)).fold(0.0, f64::max);
            assert!(err <= (1.0 - ALPHA).powi(k) + 1e-15);
            assert!(err < last);
            last = err;
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = two_cycle();
        assert!(power_single_source(&g, 2, ALPHA, 10).is_err());
        assert!(power_single_target(&g, 0, 1.0, 10).is_err());
        assert!(hop_ppr_single_target(&g, 0, 0.0, 3).is_err());
    }
}
