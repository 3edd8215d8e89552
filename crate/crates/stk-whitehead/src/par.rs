//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the [`Strategy::Parallel`] arm runs on the
//! rayon pool; without it both arms run sequentially.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match strategy {
        Strategy::Parallel => items.par_iter().map(f).collect(),
        Strategy::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(_strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Index of some item failing `pred`, if any.
#[cfg(feature = "parallel")]
pub fn find_failure<T, F>(strategy: Strategy, items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    match strategy {
        Strategy::Parallel => items.par_iter().position_first(|t| !pred(t)),
        Strategy::Sequential => items.iter().position(|t| !pred(t)),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn find_failure<T, F>(_strategy: Strategy, items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.iter().position(|t| !pred(t))
}
