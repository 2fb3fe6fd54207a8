use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Limits for the exhaustive searches. Exceeding either limit aborts the
/// search with an error; no partial answer is returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
            max_time: None,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            max_time: None,
        }
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.max_time = Some(limit);
        self
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            budget: *self,
            nodes: 0,
            start: Instant::now(),
        }
    }
}

/// Running node count for one search.
#[derive(Debug)]
pub(crate) struct Meter {
    budget: SearchBudget,
    nodes: u64,
    start: Instant,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded { nodes: self.nodes });
        }
        if self.nodes & 0xfff == 0 {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() > limit {
                    return Err(Error::TimeLimitExceeded);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}
