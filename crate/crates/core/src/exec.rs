//! Data-parallel helpers with a sequential fallback.
//!
//! Every call site maps an index range through a pure function and merges
//! with an order-independent reduction, so the rayon path (feature
//! `parallel`, on by default) and the sequential path produce identical
//! results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `0..n` through `f`, preserving index order in the output.
pub(crate) fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
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

/// Returns the item with the largest key, breaking exact ties in favor of
/// the smaller index. The reduction is associative, so the result does not
/// depend on how the range is split across threads.
pub(crate) fn argmax_by_key<T, F>(n: usize, f: F) -> Option<(usize, f64, T)>
where
    T: Send,
    F: Fn(usize) -> (f64, T) + Sync + Send,
{
    let pick = |a: (usize, f64, T), b: (usize, f64, T)| {
        if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let (key, item) = f(i);
                (i, key, item)
            })
            .reduce_with(pick)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n)
            .map(|i| {
                let (key, item) = f(i);
                (i, key, item)
            })
            .reduce(pick)
    }
}
