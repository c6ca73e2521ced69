//! Budgets, search outcomes and the worker-count knob shared by the
//! backtracking checkers.

use serde::Serialize;

/// Environment variable capping internal parallelism.
pub const THREADS_ENV: &str = "RIDGECHORD_THREADS";

/// Default node budget for exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Counts visited search nodes against a limit.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    /// Spends one node; false once the limit is reached.
    pub fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        true
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

/// Result of a search that can fail in two distinguishable ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted: no witness exists.
    Refuted,
    /// The budget ran out first.
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, SearchOutcome::Refuted)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SearchOutcome::Unknown)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Refuted => SearchOutcome::Refuted,
            SearchOutcome::Unknown => SearchOutcome::Unknown,
        }
    }
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn configured_threads() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

/// Installs the global rayon pool honoring [`THREADS_ENV`]. Safe to call more
/// than once; later calls are ignored.
pub fn init_thread_pool() {
    if let Some(n) = configured_threads() {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Below this many items the candidate scans stay sequential.
pub(crate) const PARALLEL_THRESHOLD: usize = 256;
