//! Time budgets. The core never reads a clock itself; callers pass one in.

/// Monotonic millisecond clock.
pub trait Clock {
    fn now_ms(&self) -> u64;
}

/// A clock that never advances: nothing times out and all timings read 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullClock;

impl Clock for NullClock {
    fn now_ms(&self) -> u64 {
        0
    }
}

#[cfg(feature = "std")]
impl Clock for std::time::Instant {
    fn now_ms(&self) -> u64 {
        self.elapsed().as_millis() as u64
    }
}

/// Limits for explanation tasks (one task = all R-MUPS of one concept).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplanationBudget {
    pub per_task_timeout_ms: u64,
    pub max_mups_per_concept: Option<usize>,
}

impl ExplanationBudget {
    pub const DEFAULT_TIMEOUT_MS: u64 = 1_000_000;

    pub fn with_timeout_secs(secs: u64) -> Self {
        ExplanationBudget { per_task_timeout_ms: secs.saturating_mul(1000).max(1), ..Self::default() }
    }
}

impl Default for ExplanationBudget {
    fn default() -> Self {
        ExplanationBudget { per_task_timeout_ms: Self::DEFAULT_TIMEOUT_MS, max_mups_per_concept: None }
    }
}

/// Deadline for a single task, measured on a caller-supplied clock.
#[derive(Clone, Copy)]
pub struct Deadline<'c> {
    clock: &'c dyn Clock,
    start: u64,
    limit_ms: u64,
}

impl<'c> Deadline<'c> {
    pub fn start(clock: &'c dyn Clock, limit_ms: u64) -> Self {
        Deadline { clock, start: clock.now_ms(), limit_ms }
    }

    pub fn unlimited(clock: &'c dyn Clock) -> Self {
        Deadline { clock, start: clock.now_ms(), limit_ms: u64::MAX }
    }

    pub fn expired(&self) -> bool {
        self.clock.now_ms().saturating_sub(self.start) > self.limit_ms
    }
}

impl core::fmt::Debug for Deadline<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Deadline").field("start", &self.start).field("limit_ms", &self.limit_ms).finish()
    }
}
