//! Execution strategy for the data-parallel sweeps. Without the `parallel`
//! feature both strategies run sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Maps `f` over `0..len`, preserving order.
pub(crate) fn map_indices<R, F>(strategy: Strategy, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..len).map(f).collect()
}

/// Like [`map_indices`] for fallible maps, stopping at the first error.
pub(crate) fn try_map_indices<R, E, F>(strategy: Strategy, len: usize, f: F) -> Result<Vec<R>, E>
where
    R: Send,
    E: Send,
    F: Fn(usize) -> Result<R, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree() {
        let seq = map_indices(Strategy::Sequential, 100, |i| i * i);
        let par = map_indices(Strategy::Parallel, 100, |i| i * i);
        assert_eq!(seq, par);
        let failing = |i: usize| if i == 7 { Err(i) } else { Ok(i) };
        assert_eq!(try_map_indices(Strategy::Sequential, 100, failing), Err(7));
        assert_eq!(try_map_indices(Strategy::Parallel, 100, failing), Err(7));
    }
}
