use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::seeded;

/// How query targets are drawn (always with replacement).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Probability proportional to `d_in(t) + d_out(t)`.
    #[default]
    DegreeWeighted,
    Uniform,
}

impl Sampling {
    pub fn name(self) -> &'static str {
        match self {
            Sampling::DegreeWeighted => "degree_weighted",
            Sampling::Uniform => "uniform",
        }
    }
}

pub fn sample_targets(g: &Graph, sampling: Sampling, count: usize, seed: u64) -> Result<Vec<NodeId>> {
    let mut rng = seeded(seed);
    match sampling {
        Sampling::Uniform => Ok((0..count).map(|_| rng.gen_range(0..g.node_count() as NodeId)).collect()),
        Sampling::DegreeWeighted => {
            let weights: Vec<u64> = g.nodes().map(|u| u64::from(g.in_degree(u) + g.out_degree(u))).collect();
            let dist =
                WeightedIndex::new(&weights).map_err(|e| Error::invalid(format!("cannot sample by degree: {e}")))?;
            Ok((0..count).map(|_| dist.sample(&mut rng) as NodeId).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphKind};

    #[test]
    fn degree_weighted_prefers_the_hub() {
        let g = generate_graph(GraphKind::StarIn, 11, 0).unwrap();
        let picks = sample_targets(&g, Sampling::DegreeWeighted, 4000, 1).unwrap();
        let hub = picks.iter().filter(|&&u| u == 0).count() as f64 / 4000.0;
        // hub weight 10 of total 20
        assert!((hub - 0.5).abs() < 0.05, "{hub}");
        assert_eq!(picks, sample_targets(&g, Sampling::DegreeWeighted, 4000, 1).unwrap());
    }

    #[test]
    fn uniform_in_range() {
        let g = generate_graph(GraphKind::Cycle, 7, 0).unwrap();
        let picks = sample_targets(&g, Sampling::Uniform, 100, 2).unwrap();
        assert!(picks.iter().all(|&u| u < 7));
    }
}
