//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon pool; without it every call runs sequentially. Results never depend
//! on the execution mode: floating-point reductions sum fixed-size chunks in
//! index order and searches return the lowest-index hit.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length for floating-point reductions.
pub const SUM_CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// First index in `range` (by position) for which `f` returns `Some`.
pub fn find_map_first<R, F>(exec: Exec, range: Range<usize>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => range.into_par_iter().find_map_first(f),
        _ => range.into_iter().find_map(f),
    }
}

/// `Σ_{i<n} f(i)`, summed per chunk of [`SUM_CHUNK`] indices and then across
/// chunks in order, so both modes produce bit-identical results.
pub fn chunked_sum<F>(exec: Exec, n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let chunks = n.div_ceil(SUM_CHUNK);
    let chunk_sum = |c: usize| {
        let start = c * SUM_CHUNK;
        let end = (start + SUM_CHUNK).min(n);
        (start..end).map(&f).sum::<f64>()
    };
    let partials: Vec<f64> = match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..chunks).into_par_iter().map(chunk_sum).collect(),
        _ => (0..chunks).map(chunk_sum).collect(),
    };
    partials.into_iter().sum()
}
