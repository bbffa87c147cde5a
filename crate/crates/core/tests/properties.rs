use proptest::prelude::*;

use ppr_core::baselines::{backward_search, forward_search};
use ppr_core::exact::{hop_ppr_single_target, power_single_target, ppr_matrix};
use ppr_core::graph::load_graph;
use ppr_core::rbs::{rbs_boosted, rbs_single_target};
use ppr_core::{Graph, GraphSource, NodeId, RbsConfig, ScoreVector};

const ALPHA: f64 = 0.2;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..25).prop_flat_map(|n| {
        prop::collection::vec((0..n as NodeId, 0..n as NodeId), 1..120)
            .prop_map(move |edges| Graph::from_edges(n, &edges).unwrap())
    })
}

fn reaches(g: &Graph, t: NodeId) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![t];
    seen[t as usize] = true;
    while let Some(v) = stack.pop() {
        for e in g.in_neighbors(v) {
            if !seen[e.node as usize] {
                seen[e.node as usize] = true;
                stack.push(e.node);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn in_lists_sorted_and_degrees_consistent(g in graph_strategy()) {
        let mut in_total = 0;
        for v in g.nodes() {
            let list = g.in_neighbors(v);
            prop_assert!(list.windows(2).all(|w| w[0].out_degree <= w[1].out_degree));
            for e in list {
                prop_assert_eq!(e.out_degree, g.out_degree(e.node));
                prop_assert!(g.out_neighbors(e.node).contains(&v));
            }
            in_total += list.len();
        }
        prop_assert_eq!(in_total, g.edge_count());
        let out_total: u32 = g.nodes().map(|u| g.out_degree(u)).sum();
        prop_assert_eq!(out_total as usize, g.edge_count());
    }

    #[test]
    fn binary_round_trip_is_identical(g in graph_strategy()) {
        let mut buf = Vec::new();
        g.write_binary(&mut buf).unwrap();
        prop_assert_eq!(Graph::read_binary(&buf).unwrap(), g);
    }

    #[test]
    fn edge_list_reload_is_a_fixed_point(g in graph_strategy()) {
        let mut first = Vec::new();
        g.write_edge_list(&mut first).unwrap();
        let reloaded = load_graph(&GraphSource::bytes(first.clone())).unwrap();
        let mut second = Vec::new();
        reloaded.write_edge_list(&mut second).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn backward_search_brackets_truth(g in graph_strategy(), t_pick in any::<prop::sample::Index>(), k in 1i32..5) {
        let t = t_pick.index(g.node_count()) as NodeId;
        let eps = 10f64.powi(-k);
        let truth = power_single_target(&g, t, ALPHA, 200).unwrap();
        let out = backward_search(&g, t, ALPHA, eps).unwrap();
        for s in g.nodes() {
            prop_assert!(out.reserve.get(s) <= truth.get(s) + 1e-12);
            prop_assert!(truth.get(s) <= out.reserve.get(s) + eps + 1e-12);
        }
        prop_assert!(out.residue.iter().all(|(_, r)| r <= eps));
    }

    #[test]
    fn forward_search_respects_degree_scaled_bound(g in graph_strategy(), s_pick in any::<prop::sample::Index>()) {
        let s = s_pick.index(g.node_count()) as NodeId;
        let eps = 1e-3;
        let exact = ppr_matrix(&g, ALPHA, 200).unwrap();
        let out = forward_search(&g, s, ALPHA, eps).unwrap();
        for (v, r) in out.residue.iter() {
            prop_assert!(r <= eps * g.out_degree(v).max(1) as f64 + 1e-15);
        }
        for t in g.nodes() {
            let est = out.reserve.get(t);
            prop_assert!(est <= exact[s as usize][t as usize] + 1e-12);
        }
    }

    #[test]
    fn rbs_support_and_level_zero(g in graph_strategy(), t_pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let t = t_pick.index(g.node_count()) as NodeId;
        let reach = reaches(&g, t);
        for cfg in [RbsConfig::relative(1e-2), RbsConfig::additive(1e-3)] {
            let cfg = cfg.with_seed(seed);
            let out = rbs_single_target(&g, t, &cfg).unwrap();
            prop_assert_eq!(out.hops.level(0).unwrap().entries(), &[(t, ALPHA)]);
            prop_assert!(out.estimate.iter().all(|(s, v)| v > 0.0 && reach[s as usize]));
            prop_assert_eq!(out.hops.len(), cfg.levels() + 1);
        }
    }

    #[test]
    fn rbs_deterministic_limit_matches_hop_oracle(g in graph_strategy(), t_pick in any::<prop::sample::Index>()) {
        let t = t_pick.index(g.node_count()) as NodeId;
        let cfg = RbsConfig::relative(1e-14).with_max_level(12);
        let out = rbs_single_target(&g, t, &cfg).unwrap();
        let oracle = hop_ppr_single_target(&g, t, ALPHA, 12).unwrap();
        for (ell, hop) in oracle.iter().enumerate() {
            for s in g.nodes() {
                let est = out.hops.level(ell).unwrap().get(s);
                prop_assert!((est - hop.get(s)).abs() <= 1e-12 * hop.get(s).max(1e-300) + 1e-18);
            }
        }
    }

    #[test]
    fn boost_one_is_a_single_run(g in graph_strategy(), seed in any::<u64>()) {
        let cfg = RbsConfig::additive(1e-2).with_seed(seed);
        let single = rbs_single_target(&g, 0, &cfg).unwrap();
        let boosted = rbs_boosted(&g, 0, &cfg.with_boost(1)).unwrap();
        prop_assert_eq!(single.hops, boosted.hops);
    }

    #[test]
    fn score_vector_from_pairs_merges_duplicates(pairs in prop::collection::vec((0u32..20, 0.0f64..1.0), 0..40)) {
        let v = ScoreVector::from_pairs(pairs.clone());
        prop_assert!(v.entries().windows(2).all(|w| w[0].0 < w[1].0));
        for u in 0..20u32 {
            let expected: f64 = pairs.iter().filter(|p| p.0 == u).map(|p| p.1).sum();
            prop_assert!((v.get(u) - expected).abs() < 1e-12);
        }
    }
}
