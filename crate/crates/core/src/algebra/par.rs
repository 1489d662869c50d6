//! Runtime switch for data parallelism.
//!
//! With the `parallel` feature the hot loops (polynomial and series products,
//! certificate batches) run on the rayon pool. The switch lets benches compare
//! both paths inside one binary. Results are exact, so scheduling never
//! changes them.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(cfg!(feature = "parallel"));

/// Minimum number of left-hand terms before a product is split across threads.
pub const PARALLEL_THRESHOLD: usize = 64;

/// Whether parallel code paths are active.
pub fn enabled() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::Relaxed)
}

/// Turns the parallel paths on or off. A no-op without the `parallel` feature.
pub fn set_enabled(on: bool) {
    ENABLED.store(on, Ordering::Relaxed);
}

/// Maps `f` over `items`, in parallel when enabled, preserving order.
pub fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if enabled() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}
