//! Shared fixtures for the criterion benches.

use ppr_core::graph::{generate_graph, Graph, GraphKind};

/// Directed Erdős–Rényi graph with expected out-degree `avg_degree`.
pub fn er_graph(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let p = (avg_degree / (n as f64 - 1.0)).min(1.0);
    generate_graph(GraphKind::ErdosRenyi { p }, n, seed).expect("valid generator parameters")
}

pub fn complete_graph(n: usize) -> Graph {
    generate_graph(GraphKind::Complete, n, 0).expect("valid generator parameters")
}

/// Edge list text of `g`, for load benchmarks.
pub fn edge_list_bytes(g: &Graph) -> Vec<u8> {
    let mut buf = Vec::new();
    g.write_edge_list(&mut buf).expect("writing to memory");
    buf
}
