//! Index-ordered grid mapping. With the `parallel` feature the map runs on
//! the rayon thread pool; without it the same call runs sequentially. The
//! output is ordered by input index either way, so results are identical
//! across both modes and any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to `0..n`, returning results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Like [`map_indexed`] but flattens per-index result lists, preserving
/// index order and then within-index order.
pub fn flat_map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    map_indexed(n, f).into_iter().flatten().collect()
}
