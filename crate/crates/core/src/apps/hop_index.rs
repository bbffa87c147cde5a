use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::parallel::with_workers;
use crate::rbs::{rbs_boosted, HopTable, RbsConfig};
use crate::rng::derive_seed;
use crate::stats::QueryStats;

/// Per-target hop tables `π̂_ℓ(·, w)` for a chosen target set.
#[derive(Debug, Clone, PartialEq)]
pub struct HopIndex {
    pub alpha: f64,
    tables: BTreeMap<NodeId, HopTable>,
    pub stats: QueryStats,
}

impl HopIndex {
    pub fn table(&self, target: NodeId) -> Option<&HopTable> {
        self.tables.get(&target)
    }

    pub fn targets(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.tables.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// `target,ell,node,value` rows ordered by target, level, node.
    pub fn write_csv<W: Write>(&self, mut w: W, graph: &Graph) -> std::io::Result<()> {
        writeln!(w, "target,ell,node,value")?;
        for (&t, table) in &self.tables {
            table.write_rows(&mut w, graph, &format!("{},", graph.label(t)))?;
        }
        Ok(())
    }
}

/// Runs one (boosted) RBS query per distinct target. Target `w` is seeded
/// with `derive_seed(rbs_cfg.seed, w)`, so the index does not depend on the
/// order of `targets` or on `workers`.
pub fn build_hop_index(g: &Graph, targets: &[NodeId], rbs_cfg: &RbsConfig, workers: usize) -> Result<HopIndex> {
    if targets.is_empty() {
        return Err(Error::invalid("target set is empty"));
    }
    rbs_cfg.validate()?;
    let mut distinct = targets.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for &t in &distinct {
        g.check_node(t)?;
    }
    let outputs = with_workers(workers, || {
        distinct
            .par_iter()
            .map(|&t| {
                let cfg = RbsConfig { seed: derive_seed(rbs_cfg.seed, t as u64), ..rbs_cfg.clone() };
                rbs_boosted(g, t, &cfg)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut stats = QueryStats::default();
    let mut tables = BTreeMap::new();
    for (t, out) in distinct.into_iter().zip(outputs) {
        stats += out.stats;
        tables.insert(t, out.hops);
    }
    Ok(HopIndex { alpha: rbs_cfg.alpha, tables, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::hop_ppr_single_target;
    use crate::graph::{generate_graph, GraphKind};

    #[test]
    fn target_without_in_edges() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (2, 0)]).unwrap();
        let idx = build_hop_index(&g, &[2], &RbsConfig::additive(1e-3), 0).unwrap();
        let table = idx.table(2).unwrap();
        assert_eq!(table.level(0).unwrap().entries(), &[(2, 0.2)]);
        assert!(table.levels()[1..].iter().all(|l| l.is_empty()));
    }

    #[test]
    fn two_cycle_hop_pattern_in_expectation() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let trials = 4000;
        let mut sums = [0.0; 8];
        for seed in 0..trials {
            let idx =
                build_hop_index(&g, &[1], &RbsConfig::relative(0.05).with_seed(seed).with_max_level(7), 0).unwrap();
            for (ell, level) in idx.table(1).unwrap().levels().iter().enumerate() {
                sums[ell] += level.sum();
            }
        }
        for (ell, s) in sums.iter().enumerate() {
            let expected = 0.2 * 0.8f64.powi(ell as i32);
            let mean = s / trials as f64;
            // one node holds level ℓ; variance ≤ θπ_ℓ
            let se = (0.05 * expected / trials as f64).sqrt();
            assert!((mean - expected).abs() < 4.0 * se, "ell {ell}: {mean} vs {expected}");
        }
    }

    #[test]
    fn all_targets_mass_near_truncated_ppr() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.15 }, 30, 5).unwrap();
        let cfg = RbsConfig::additive(1e-3).with_boost(5).with_seed(2);
        let targets: Vec<NodeId> = g.nodes().collect();
        let idx = build_hop_index(&g, &targets, &cfg, 2).unwrap();
        let levels = cfg.levels();
        let mut est = vec![0.0; 30];
        let mut exact = vec![0.0; 30];
        for t in g.nodes() {
            for (s, v) in idx.table(t).unwrap().total().iter() {
                est[s as usize] += v;
            }
            for hop in hop_ppr_single_target(&g, t, 0.2, levels).unwrap() {
                for (acc, v) in exact.iter_mut().zip(&hop.values) {
                    *acc += v;
                }
            }
        }
        for s in 0..30 {
            assert!((est[s] - exact[s]).abs() < 0.05, "source {s}: {} vs {}", est[s], exact[s]);
            assert!(exact[s] <= 1.0 + 1e-12 && exact[s] >= 1.0 - 0.8f64.powi(levels as i32 + 1) - 1e-12);
        }
    }

    #[test]
    fn csv_layout_and_empty_targets() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(build_hop_index(&g, &[], &RbsConfig::additive(0.1), 0).is_err());
        let idx = build_hop_index(&g, &[1, 1, 0], &RbsConfig::additive(0.5), 0).unwrap();
        assert_eq!(idx.len(), 2);
        let mut buf = Vec::new();
        idx.write_csv(&mut buf, &g).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("target,ell,node,value\n0,0,0,0.2\n"));
    }
}
