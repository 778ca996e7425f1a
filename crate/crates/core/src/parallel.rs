//! Work splitting for sweeps. With the `parallel` feature the parts run on a
//! rayon pool; without it they run in order on the calling thread. Results
//! are always combined in part order, so output does not depend on the
//! thread count.

use std::ops::Range;

/// Requested worker count; `0` means "use every available core".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Workers(pub usize);

impl Workers {
    pub const SEQUENTIAL: Workers = Workers(1);

    pub fn threads(self) -> usize {
        if self.0 > 0 {
            return self.0;
        }
        #[cfg(feature = "parallel")]
        {
            rayon::current_num_threads()
        }
        #[cfg(not(feature = "parallel"))]
        {
            1
        }
    }

    /// Number of disjoint parts a sweep is cut into.
    pub fn parts(self) -> usize {
        self.threads()
    }

    /// Evaluates `map` on each part index and folds the results left to
    /// right with `reduce`.
    pub fn map_reduce<T, M, R>(self, parts: usize, map: M, reduce: R) -> Option<T>
    where
        T: Send,
        M: Fn(usize) -> T + Sync + Send,
        R: Fn(T, T) -> T,
    {
        let results = self.map_collect(parts, map);
        results.into_iter().reduce(reduce)
    }

    #[cfg(feature = "parallel")]
    fn map_collect<T, M>(self, parts: usize, map: M) -> Vec<T>
    where
        T: Send,
        M: Fn(usize) -> T + Sync + Send,
    {
        use rayon::prelude::*;
        let run = || (0..parts).into_par_iter().map(&map).collect::<Vec<T>>();
        if self.0 == 0 {
            return run();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.0).build() {
            Ok(pool) => pool.install(run),
            // fall back to the global pool if a dedicated one cannot start
            Err(_) => run(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn map_collect<T, M>(self, parts: usize, map: M) -> Vec<T>
    where
        M: Fn(usize) -> T,
    {
        (0..parts).map(map).collect()
    }
}

/// The `part`-th of `parts` contiguous, near-equal slices of `0..total`.
pub fn split_range(total: u64, parts: usize, part: usize) -> Range<u64> {
    let parts = parts.max(1) as u128;
    let lo = total as u128 * part as u128 / parts;
    let hi = total as u128 * (part as u128 + 1) / parts;
    lo as u64..hi as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_covers_range_without_overlap() {
        for total in [0u64, 1, 7, 100, 1 << 20] {
            for parts in 1..10 {
                let mut next = 0;
                for p in 0..parts {
                    let r = split_range(total, parts, p);
                    assert_eq!(r.start, next);
                    next = r.end;
                }
                assert_eq!(next, total);
            }
        }
    }

    #[test]
    fn map_reduce_is_ordered() {
        for w in [1, 2, 8] {
            let s = Workers(w)
                .map_reduce(16, |i| vec![i], |mut a, b| {
                    a.extend(b);
                    a
                })
                .unwrap();
            assert_eq!(s, (0..16).collect::<Vec<_>>());
        }
    }
}
