//! Sequential and data-parallel scan primitives.
//!
//! Every exhaustive check in this crate reduces to one of two shapes: find the
//! lexicographically smallest witness over an index range, or fold a maximum
//! residual over chunks. Both merges are order-independent, so the parallel
//! and sequential paths produce identical results. The `parallel` feature
//! selects the rayon path; the `*_seq` variants are always compiled and are
//! what the benches compare against.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest witness over `0..len`, sequential path.
pub fn find_min_seq<T, F>(len: usize, f: F) -> Option<T>
where
    T: Ord,
    F: Fn(usize) -> Option<T>,
{
    (0..len).filter_map(f).min()
}

#[cfg(feature = "parallel")]
pub fn find_min<T, F>(len: usize, f: F) -> Option<T>
where
    T: Ord + Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    (0..len).into_par_iter().filter_map(f).min()
}

#[cfg(not(feature = "parallel"))]
pub fn find_min<T, F>(len: usize, f: F) -> Option<T>
where
    T: Ord + Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    find_min_seq(len, f)
}

/// Maximum of `f` over `0..len`, sequential path. Returns 0.0 for empty ranges.
pub fn max_f64_seq<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64,
{
    (0..len).map(f).fold(0.0_f64, f64::max)
}

#[cfg(feature = "parallel")]
pub fn max_f64<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    (0..len)
        .into_par_iter()
        .map(f)
        .reduce(|| 0.0_f64, f64::max)
}

#[cfg(not(feature = "parallel"))]
pub fn max_f64<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    max_f64_seq(len, f)
}

/// Collects `f(i)` for `0..len` preserving index order, sequential path.
pub fn collect_seq<T, F>(len: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..len).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn collect<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn collect<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    collect_seq(len, f)
}

/// True when the rayon path is compiled in.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
