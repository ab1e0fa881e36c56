//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper preserves input order, so results never depend on the
//! thread count. Without the `parallel` feature both modes run sequentially.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    #[cfg(feature = "parallel")]
    fn parallel(self) -> bool {
        self == Execution::Parallel
    }
}

/// Maps `f` over `items`, keeping order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Maps `f` over `range`, keeping order.
pub fn map_range<R, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// First `Some` in index order, regardless of scheduling.
pub fn find_map_first<R, F>(exec: Execution, range: Range<usize>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    range.into_iter().find_map(f)
}

/// Sets the size of the global worker pool. Only the first call has effect.
pub fn set_threads(threads: usize) -> Result<()> {
    if threads == 0 {
        return Err(Error::Domain("thread count must be positive".into()));
    }
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Resource(e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u32> = (0..1000).collect();
        let a = map(Execution::Parallel, &items, |x| x * 3);
        let b = map(Execution::Sequential, &items, |x| x * 3);
        assert_eq!(a, b);
        let f = |i: usize| (i % 97 == 50).then_some(i);
        assert_eq!(find_map_first(Execution::Parallel, 0..10_000, f), Some(50));
        assert_eq!(
            find_map_first(Execution::Sequential, 0..10_000, f),
            Some(50)
        );
        assert_eq!(
            map_range(Execution::Parallel, 0..5, |i| i * i),
            vec![0, 1, 4, 9, 16]
        );
    }
}
