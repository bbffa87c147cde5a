use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::DenseVector;
use crate::graph::NodeId;
use crate::score::ScoreVector;

/// The three quality measures reported by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Metrics {
    pub max_additive_err: f64,
    pub precision_at_k: f64,
    pub f1: f64,
}

fn check_universe(truth: &DenseVector, est: &ScoreVector) -> Result<()> {
    match est.max_node() {
        Some(u) if u as usize >= truth.len() => {
            Err(Error::DimensionMismatch { expected: truth.len(), found: u as usize })
        }
        _ => Ok(()),
    }
}

/// `max_v |truth(v) - est(v)|`, absent estimates read as zero.
pub fn max_additive_err(truth: &DenseVector, est: &ScoreVector) -> Result<f64> {
    check_universe(truth, est)?;
    let dense = est.to_dense(truth.len())?;
    Ok(truth.values.iter().zip(&dense).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// The `k` largest entries over nodes `0..n`, ties broken by ascending node id.
pub fn top_k(values: &[f64], k: usize) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = (0..values.len() as NodeId).collect();
    ids.sort_by(|&a, &b| values[b as usize].total_cmp(&values[a as usize]).then(a.cmp(&b)));
    ids.truncate(k);
    ids
}

/// `|top_k(truth) ∩ top_k(est)| / k`.
pub fn precision_at_k(truth: &DenseVector, est: &ScoreVector, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > truth.len() {
        return Err(Error::invalid(format!("k = {k} exceeds the {} nodes", truth.len())));
    }
    check_universe(truth, est)?;
    let expected: BTreeSet<NodeId> = top_k(&truth.values, k).into_iter().collect();
    let dense = est.to_dense(truth.len())?;
    let hits = top_k(&dense, k).iter().filter(|u| expected.contains(u)).count();
    Ok(hits as f64 / k as f64)
}

/// F1 of `est` against `truth`. Two empty sets score 1; otherwise F1 is 0
/// whenever precision + recall is 0.
pub fn f1_heavy_hitters(truth: &BTreeSet<NodeId>, est: &BTreeSet<NodeId>) -> f64 {
    if truth.is_empty() && est.is_empty() {
        return 1.0;
    }
    let hits = truth.intersection(est).count() as f64;
    let precision = if est.is_empty() { 0.0 } else { hits / est.len() as f64 };
    let recall = if truth.is_empty() { 0.0 } else { hits / truth.len() as f64 };
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}
