//! Work caps for exhaustive searches.

use std::sync::atomic::{AtomicU64, Ordering};

/// Environment variable overriding the default work cap.
pub const BUDGET_ENV: &str = "LETQ_BUDGET";

/// Default number of work units (search nodes or checked pairs).
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// A shareable work counter with a hard cap.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Reads `LETQ_BUDGET`, falling back to [`DEFAULT_BUDGET`].
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Charges `units`; false once the cap has been exceeded.
    pub fn charge(&self, units: u64) -> bool {
        let before = self.used.fetch_add(units, Ordering::Relaxed);
        before.saturating_add(units) <= self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.used() > self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
