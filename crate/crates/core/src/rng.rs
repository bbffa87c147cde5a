//! Seed handling.
//!
//! Randomized pushes draw their uniform from a ChaCha stream addressed by
//! `(seed, level, node)`, so the value a push sees does not depend on the
//! order in which pushes are executed.

use rand::distributions::Open01;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DERIVE_DOMAIN: u64 = 0x9e37_79b9_7f4a_7c15;

/// Derives an independent child seed for `stream` (a copy index, a target id, ...).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ DERIVE_DOMAIN);
    rng.set_stream(stream);
    rng.next_u64()
}

/// Seeded generator for general sequential use (walks, sampling, graph generation).
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Counter-addressed uniforms in the open interval (0, 1).
pub(crate) struct PushRng {
    inner: ChaCha8Rng,
}

impl PushRng {
    pub(crate) fn new(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub(crate) fn draw(&mut self, level: usize, node: u32) -> f64 {
        self.inner.set_stream(level as u64);
        // one f64 consumes two 32-bit words
        self.inner.set_word_pos(u128::from(node) * 2);
        self.inner.sample(Open01)
    }
}
