//! Deterministic fan-out over indexed work items.
//!
//! Work is identified by index and every item derives its own random stream,
//! so results are identical for any worker count; only wall time changes.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "MINLAB_THREADS";

/// Worker count; `None` uses rayon's global pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Workers(pub Option<usize>);

impl Workers {
    /// Reads `MINLAB_THREADS`. Unset or empty means default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => v
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .map(|n| Workers(Some(n)))
                .ok_or_else(|| Error::InvalidParameter(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
            _ => Ok(Workers(None)),
        }
    }

    pub fn single() -> Self {
        Workers(Some(1))
    }

    /// `f(0), f(1), ..., f(n - 1)` in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self.0 {
            None => (0..n).into_par_iter().map(f).collect(),
            Some(1) => (0..n).map(f).collect(),
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("thread pool")
                .install(|| (0..n).into_par_iter().map(f).collect()),
        }
    }

    /// Like [`map`](Self::map) for fallible work; the first error by index wins.
    pub fn try_map<T, F>(self, n: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        self.map(n, f).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_workers() {
        let f = |i: usize| i * i;
        let base = Workers::single().map(100, f);
        assert_eq!(Workers(Some(3)).map(100, f), base);
        assert_eq!(Workers(None).map(100, f), base);
    }
}
