use super::{InEntry, NodeId};

/// In-adjacency in CSR form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InAdjacency {
    pub(crate) offsets: Vec<usize>,
    pub(crate) entries: Vec<InEntry>,
}

impl InAdjacency {
    #[inline]
    pub fn list(&self, v: NodeId) -> &[InEntry] {
        let v = v as usize;
        &self.entries[self.offsets[v]..self.offsets[v + 1]]
    }

    pub(crate) fn validate(&self, n: usize, m: usize) -> Result<(), String> {
        if self.offsets.len() != n + 1 || self.offsets[n] != m || self.entries.len() != m {
            return Err("in-adjacency offsets do not match edge count".into());
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err("in-adjacency offsets are not monotone".into());
        }
        Ok(())
    }
}

/// Builds in-adjacency lists sorted ascending by the out-degree of each
/// in-neighbor, in `O(n + m)` with a counting sort keyed on that degree.
///
/// Ties keep the order in which `edges` yields them. `out_degree[u]` must be
/// the number of edges leaving `u`.
pub fn sort_in_lists(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>, out_degree: &[u32]) -> InAdjacency {
    let edges: Vec<(NodeId, NodeId)> = edges.into_iter().collect();
    let max_degree = out_degree.iter().copied().max().unwrap_or(0) as usize;

    // counting sort of edge indices by d_out(source)
    let mut bucket_start = vec![0usize; max_degree + 2];
    for &(u, _) in &edges {
        bucket_start[out_degree[u as usize] as usize + 1] += 1;
    }
    for d in 0..=max_degree {
        bucket_start[d + 1] += bucket_start[d];
    }
    let mut order = vec![0usize; edges.len()];
    for (i, &(u, _)) in edges.iter().enumerate() {
        let slot = &mut bucket_start[out_degree[u as usize] as usize];
        order[*slot] = i;
        *slot += 1;
    }

    let mut offsets = vec![0usize; n + 1];
    for &(_, v) in &edges {
        offsets[v as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor = offsets[..n].to_vec();
    let mut entries = vec![InEntry { node: 0, out_degree: 0 }; edges.len()];
    for i in order {
        let (u, v) = edges[i];
        entries[cursor[v as usize]] = InEntry { node: u, out_degree: out_degree[u as usize] };
        cursor[v as usize] += 1;
    }
    InAdjacency { offsets, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_are_stable() {
        // nodes 3, 1, 2 all have out-degree 1 and point at 0, fed in that order
        let out_degree = [0, 1, 1, 1];
        let adj = sort_in_lists(4, [(3, 0), (1, 0), (2, 0)], &out_degree);
        let ids: Vec<_> = adj.list(0).iter().map(|e| e.node).collect();
        assert_eq!(ids, vec![3, 1, 2]);
    }

    #[test]
    fn sorts_by_degree_then_input_order() {
        let out_degree = [3, 1, 2, 0];
        let adj = sort_in_lists(4, [(0, 3), (2, 3), (1, 3), (0, 1), (0, 2), (2, 0)], &out_degree);
        let got: Vec<_> = adj.list(3).iter().map(|e| (e.node, e.out_degree)).collect();
        assert_eq!(got, vec![(1, 1), (2, 2), (0, 3)]);
    }
}
