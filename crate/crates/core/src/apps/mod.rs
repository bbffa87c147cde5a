//! Applications built from single-target queries: heavy hitters, an
//! approximate all-pairs PPR matrix, and a per-target hop index.

mod heavy;
mod hop_index;
mod matrix;

pub use heavy::{classify, heavy_hitters, HeavyHitter, HeavyHitterConfig, HitterClass};
pub use hop_index::{build_hop_index, HopIndex};
pub use matrix::{build_ppr_matrix, MatrixConfig, MatrixMethod, PprMatrix};
