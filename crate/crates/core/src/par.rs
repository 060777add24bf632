//! Order-preserving data-parallel helpers.
//!
//! With the `parallel` feature the work runs on a rayon pool; without it,
//! or when a caller asks for a single worker, everything runs on the calling
//! thread. Results are always returned in input order, so callers see the
//! same output for every worker count.

/// Number of workers to use: `0` means "all available cores".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Workers(pub usize);

impl Workers {
    pub const SEQUENTIAL: Workers = Workers(1);
    pub const ALL: Workers = Workers(0);

    pub fn is_sequential(self) -> bool {
        self.0 == 1 || !cfg!(feature = "parallel")
    }
}

impl Default for Workers {
    fn default() -> Self {
        Workers::ALL
    }
}

/// Runs `op` with `workers` threads available to nested parallel helpers.
#[cfg(feature = "parallel")]
pub fn install<R: Send>(workers: Workers, op: impl FnOnce() -> R + Send) -> R {
    if workers.0 == 0 || workers.0 == 1 {
        return op();
    }
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.0)
        .build()
    {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn install<R: Send>(_workers: Workers, op: impl FnOnce() -> R + Send) -> R {
    op()
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map_ordered<T, R, F>(items: &[T], workers: Workers, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !workers.is_sequential() {
        use rayon::prelude::*;
        return install(workers, || items.par_iter().map(&f).collect());
    }
    let _ = workers;
    items.iter().map(f).collect()
}

/// `range.filter_map(f).collect()`, possibly in parallel.
pub fn filter_map_range<R, F>(range: std::ops::Range<u64>, workers: Workers, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !workers.is_sequential() {
        use rayon::prelude::*;
        return install(workers, || range.into_par_iter().filter_map(&f).collect());
    }
    let _ = workers;
    range.filter_map(f).collect()
}
