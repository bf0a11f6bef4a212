//! Worker-pool sizing.
//!
//! Work is always split into fixed-size units whose results are merged in
//! unit order, so the thread count never changes an answer.

use rayon::ThreadPoolBuilder;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "CHROMATIC_LAB_THREADS";

/// Runs `f` on a pool sized by [`THREADS_ENV`], or on the global pool when
/// the variable is unset or unusable.
pub fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
