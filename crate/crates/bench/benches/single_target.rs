use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ppr_bench::{complete_graph, edge_list_bytes, er_graph};
use ppr_core::baselines::backward_search;
use ppr_core::graph::load_graph;
use ppr_core::rbs::{rbs_single_target, RbsConfig};
use ppr_core::{Graph, GraphSource, NodeId};

fn busiest(g: &Graph) -> NodeId {
    g.nodes().max_by_key(|&v| g.in_degree(v)).unwrap()
}

fn single_target(c: &mut Criterion) {
    let graphs = [("er-20k-d10", er_graph(20_000, 10.0, 1)), ("complete-300", complete_graph(300))];
    for (name, g) in &graphs {
        let t = busiest(g);
        let mut group = c.benchmark_group(format!("single-target/{name}"));
        for delta in [1e-3, 1e-4] {
            group.bench_with_input(BenchmarkId::new("rbs-relative", delta), &delta, |b, &d| {
                let cfg = RbsConfig::relative(d).with_seed(1);
                b.iter(|| rbs_single_target(g, black_box(t), &cfg).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("rbs-additive", delta), &delta, |b, &d| {
                let cfg = RbsConfig::additive(d).with_seed(1);
                b.iter(|| rbs_single_target(g, black_box(t), &cfg).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("bs", delta), &delta, |b, &d| {
                b.iter(|| backward_search(g, black_box(t), 0.2, d).unwrap())
            });
        }
        group.finish();
    }
}

fn preprocessing(c: &mut Criterion) {
    let g = er_graph(50_000, 10.0, 2);
    let text = edge_list_bytes(&g);
    let mut binary = Vec::new();
    g.write_binary(&mut binary).unwrap();
    let mut group = c.benchmark_group("preprocessing");
    group.sample_size(10);
    group.bench_function("load-edge-list-500k", |b| {
        b.iter(|| load_graph(&GraphSource::bytes(black_box(text.clone()))).unwrap())
    });
    group.bench_function("read-binary-500k", |b| b.iter(|| Graph::read_binary(black_box(&binary)).unwrap()));
    group.finish();
}

criterion_group!(benches, single_target, preprocessing);
criterion_main!(benches);
