use std::ops::Range;

/// Selects the rayon or the single-threaded path for the data-parallel loops.
///
/// Without the `parallel` feature both variants run sequentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Chunk length for index-range splitting.
pub(crate) const CHUNK: usize = 1 << 14;

fn chunks(range: Range<usize>, chunk: usize) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = range.start;
    while start < range.end {
        let end = (start + chunk).min(range.end);
        out.push(start..end);
        start = end;
    }
    out
}

pub(crate) fn sort_unstable<T: Ord + Send>(exec: Execution, v: &mut [T]) {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::slice::ParallelSliceMut;
            v.par_sort_unstable()
        }
        _ => v.sort_unstable(),
    }
}

/// Sums `f` over consecutive sub-ranges of `range`.
pub(crate) fn sum_ranges<F>(exec: Execution, range: Range<usize>, f: F) -> u128
where
    F: Fn(Range<usize>) -> u128 + Sync + Send,
{
    let parts = chunks(range, CHUNK);
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            parts.into_par_iter().map(f).sum()
        }
        _ => parts.into_iter().map(f).sum(),
    }
}

/// Concatenates `f` over consecutive sub-ranges of `range`, preserving order.
pub(crate) fn flat_map_ranges<T, F>(exec: Execution, range: Range<usize>, chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> Vec<T> + Sync + Send,
{
    let parts = chunks(range, chunk.max(1));
    let pieces: Vec<Vec<T>> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            parts.into_par_iter().map(f).collect()
        }
        _ => parts.into_iter().map(f).collect(),
    };
    pieces.into_iter().flatten().collect()
}

/// Order-preserving map over a slice.
pub(crate) fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
