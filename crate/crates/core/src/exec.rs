//! Data-parallel helpers with a sequential fallback.
//!
//! Every exhaustive loop in the crate (associativity triples, subset scans,
//! random instance sweeps) goes through [`Strategy`]. With the `parallel`
//! feature enabled the parallel variant uses rayon; without it both variants
//! run on the calling thread. Results are always returned in index order, so
//! the two strategies are observationally identical.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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

impl Strategy {
    /// Whether this strategy will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }

    /// Order-preserving map over an index range.
    pub fn map_range<U, F>(self, range: Range<usize>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Order-preserving filter-map over an index range.
    pub fn filter_map_range<U, F>(self, range: Range<usize>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel {
            return range.into_par_iter().filter_map(f).collect();
        }
        range.filter_map(f).collect()
    }

    /// First (lowest index) `Some` produced by `f`, independent of scheduling.
    pub fn find_map_first<U, F>(self, range: Range<usize>, f: F) -> Option<U>
    where
        U: Send,
        F: Fn(usize) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel {
            return range.into_par_iter().find_map_first(f);
        }
        range.into_iter().find_map(f)
    }

    /// Order-preserving map over a slice.
    pub fn map_slice<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Strategy::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let seq = Strategy::Sequential.filter_map_range(0..1000, |i| (i % 7 == 3).then_some(i * 2));
        let par = Strategy::Parallel.filter_map_range(0..1000, |i| (i % 7 == 3).then_some(i * 2));
        assert_eq!(seq, par);
        let first = Strategy::Parallel.find_map_first(0..10_000, |i| (i > 500 && i % 13 == 0).then_some(i));
        assert_eq!(first, Some(507));
        assert_eq!(
            Strategy::Sequential.map_slice(&[1, 2, 3], |x| x * x),
            Strategy::Parallel.map_slice(&[1, 2, 3], |x| x * x)
        );
    }
}
