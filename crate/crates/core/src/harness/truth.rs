use std::fs;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::exact::{power_single_source, power_single_target, DenseVector, View};
use crate::graph::Graph;
use crate::io::{write_atomic, ByteReader};

/// On-disk cache of power-iteration vectors keyed by
/// `(graph fingerprint, view, node, α, iterations)`.
///
/// Without a directory it simply computes.
#[derive(Debug, Clone, Default)]
pub struct TruthCache {
    dir: Option<PathBuf>,
}

impl TruthCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn get(&self, g: &Graph, view: View, alpha: f64, iters: usize) -> Result<DenseVector> {
        let compute = || match view {
            View::Source(s) => power_single_source(g, s, alpha, iters),
            View::Target(t) => power_single_target(g, t, alpha, iters),
        };
        let Some(dir) = &self.dir else { return compute() };
        let (tag, node) = match view {
            View::Source(s) => ('s', s),
            View::Target(t) => ('t', t),
        };
        let path = dir.join(format!("{}-{tag}{node}-a{:016x}-i{iters}.truth", g.fingerprint(), alpha.to_bits()));
        if let Ok(bytes) = fs::read(&path) {
            let mut r = ByteReader::new(&bytes);
            let values: Option<Vec<f64>> = (0..g.node_count()).map(|_| r.f64()).collect();
            match values {
                Some(values) if r.is_empty() => return Ok(DenseVector { values, view }),
                _ => return Err(Error::Cache(format!("{} has the wrong length", path.display()))),
            }
        }
        let v = compute()?;
        write_atomic(&path, |w| {
            for x in &v.values {
                w.write_all(&x.to_le_bytes())?;
            }
            Ok(())
        })?;
        Ok(v)
    }
}
