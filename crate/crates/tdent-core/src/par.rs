//! Thin dispatch layer between the rayon and sequential code paths.
//!
//! Every kernel is written so that each output element (or fixed batch)
//! depends only on its own index; combination happens in index order.  The
//! `parallel` feature therefore changes wall time only, never results.

#[cfg(feature = "parallel")]
pub(crate) fn chunks_mut_indexed<T, F>(data: &mut [T], chunk: usize, parallel: bool, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    use rayon::prelude::*;
    if parallel {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    } else {
        for (i, c) in data.chunks_mut(chunk).enumerate() {
            f(i, c);
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn chunks_mut_indexed<T, F>(data: &mut [T], chunk: usize, _parallel: bool, f: F)
where
    F: Fn(usize, &mut [T]),
{
    for (i, c) in data.chunks_mut(chunk).enumerate() {
        f(i, c);
    }
}

/// Maps `f` over `0..count`, returning results in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<R, F>(count: usize, parallel: bool, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        (0..count).into_par_iter().map(f).collect()
    } else {
        (0..count).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<R, F>(count: usize, _parallel: bool, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..count).map(f).collect()
}

pub(crate) fn default_parallel() -> bool {
    cfg!(feature = "parallel")
}
