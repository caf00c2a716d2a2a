use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Refusal, SearchStats};

/// Default node budget for a single top-level search.
pub const DEFAULT_NODES: u64 = 20_000_000;

/// Node-count budget shared by every search performed under one call.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
    refusals: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0), refusals: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used())
    }

    /// Charge one search node.
    #[inline]
    pub fn tick(&self) -> Result<(), Refusal> {
        self.charge(1)
    }

    pub fn charge(&self, n: u64) -> Result<(), Refusal> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit {
            Err(self.refusal("node budget exhausted"))
        } else {
            Ok(())
        }
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.used().min(self.limit),
            refusals: self.refusals.load(Ordering::Relaxed),
        }
    }

    /// Build a refusal and count it.
    pub fn refusal(&self, reason: impl Into<String>) -> Refusal {
        self.refusals.fetch_add(1, Ordering::Relaxed);
        Refusal { reason: reason.into(), stats: self.stats() }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODES)
    }
}
