use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource caps shared by the search engines.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest number of Kneser edges (or disjoint tuples) that may be enumerated.
    pub max_edges: u64,
    /// Largest removal-set size the defect search will try.
    pub max_defect_size: Option<usize>,
    pub deadline: Option<Instant>,
    /// Worker threads for the parallel stages; 1 runs everything on the caller's thread.
    pub threads: usize,
}

pub const DEFAULT_MAX_EDGES: u64 = 10_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: DEFAULT_MAX_EDGES,
            max_defect_size: None,
            deadline: None,
            threads: 1,
        }
    }
}

impl Limits {
    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::BudgetExhausted),
            _ => Ok(()),
        }
    }

    /// Runs `op` inside a rayon pool sized to `threads`, or inline when single-threaded.
    pub(crate) fn install<T: Send>(&self, op: impl FnOnce() -> T + Send) -> T {
        if self.threads <= 1 {
            return op();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}
