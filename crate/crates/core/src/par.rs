//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (default) `Exec::Parallel` runs on the rayon
//! global pool. Without it every loop runs sequentially and
//! `Exec::Parallel` is accepted but behaves like `Exec::Sequential`.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Apply `f(chunk_index, chunk)` to consecutive `chunk`-sized pieces of `data`.
pub(crate) fn for_each_chunk_mut<T, F>(exec: Exec, data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = exec;
    data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
}

/// Sum `f(i)` over `range`.
pub(crate) fn sum_over<F>(exec: Exec, range: Range<usize>, f: F) -> u64
where
    F: Fn(usize) -> u64 + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).sum();
    }
    let _ = exec;
    range.map(f).sum()
}

/// Fold `range` into per-worker accumulators and merge them.
pub(crate) fn fold_reduce<A, Id, Fo, Re>(
    exec: Exec,
    range: Range<usize>,
    identity: Id,
    fold: Fo,
    reduce: Re,
) -> A
where
    A: Send,
    Id: Fn() -> A + Send + Sync,
    Fo: Fn(A, usize) -> A + Send + Sync,
    Re: Fn(A, A) -> A + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range
            .into_par_iter()
            .with_min_len(1024)
            .fold(&identity, &fold)
            .reduce(&identity, &reduce);
    }
    let _ = (exec, &reduce);
    range.fold(identity(), fold)
}
