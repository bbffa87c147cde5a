use rayon::ThreadPoolBuilder;

use crate::error::{Error, Result};

/// Runs `f` on a pool of `workers` threads, or on the global pool when `workers` is 0.
pub(crate) fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if workers == 0 {
        return f();
    }
    let pool = ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {workers} workers: {e}")))?;
    pool.install(f)
}
