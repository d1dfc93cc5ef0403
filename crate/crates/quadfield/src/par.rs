//! Data-parallel dispatch. With the `parallel` feature (default) the chunked
//! helpers fan out over rayon; without it they run sequentially. Reductions
//! are sums of integers or ordered concatenations, so results are identical
//! either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sum `worker(lo, hi)` over consecutive chunks covering 0..total.
pub(crate) fn chunked_sum<F>(total: u64, chunk: u64, worker: F) -> i64
where
    F: Fn(u64, u64) -> i64 + Sync,
{
    let chunk = chunk.max(1);
    let n_chunks = total.div_ceil(chunk);
    let run = |k: u64| {
        let lo = k * chunk;
        let hi = (lo + chunk).min(total);
        worker(lo, hi)
    };
    #[cfg(feature = "parallel")]
    {
        (0..n_chunks).into_par_iter().map(run).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n_chunks).map(run).sum()
    }
}

/// Always-sequential variant, kept for benchmarking against the parallel path.
pub(crate) fn chunked_sum_serial<F>(total: u64, chunk: u64, worker: F) -> i64
where
    F: Fn(u64, u64) -> i64,
{
    let chunk = chunk.max(1);
    let n_chunks = total.div_ceil(chunk);
    (0..n_chunks)
        .map(|k| {
            let lo = k * chunk;
            let hi = (lo + chunk).min(total);
            worker(lo, hi)
        })
        .sum()
}

/// Concatenate `worker(i)` over i in 0..count, preserving index order.
pub(crate) fn flat_map_indexed<T, F>(count: u64, worker: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Vec<T> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().flat_map_iter(worker).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).flat_map(worker).collect()
    }
}

/// Always-sequential variant of `flat_map_indexed`.
pub(crate) fn flat_map_indexed_serial<T, F>(count: u64, worker: F) -> Vec<T>
where
    F: Fn(u64) -> Vec<T>,
{
    (0..count).flat_map(worker).collect()
}
