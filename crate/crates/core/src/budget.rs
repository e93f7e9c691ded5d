//! Wall-clock and memory limits checked inside the long-running loops.

use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("budget exceeded during {stage}: {reason}")]
pub struct BudgetExceeded {
    pub stage: String,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Budget {
    start: Instant,
    time_limit: Option<Duration>,
    memory_limit: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            start: Instant::now(),
            time_limit: None,
            memory_limit: None,
        }
    }

    pub fn new(time_limit: Option<Duration>, memory_limit_bytes: Option<u64>) -> Self {
        Budget {
            start: Instant::now(),
            time_limit,
            memory_limit: memory_limit_bytes,
        }
    }

    /// Ten minutes and 4 GiB.
    pub fn standard() -> Self {
        Budget::new(Some(Duration::from_secs(600)), Some(4 << 30))
    }

    /// Twelve hours and 16 GiB.
    pub fn extended() -> Self {
        Budget::new(Some(Duration::from_secs(12 * 3600)), Some(16 << 30))
    }

    /// Same limits, clock restarted.
    pub fn restarted(&self) -> Self {
        Budget {
            start: Instant::now(),
            ..self.clone()
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn check(&self, stage: &str) -> Result<(), BudgetExceeded> {
        if let Some(limit) = self.time_limit {
            if self.start.elapsed() > limit {
                return Err(BudgetExceeded {
                    stage: stage.to_string(),
                    reason: format!("time limit of {:.1}s reached", limit.as_secs_f64()),
                });
            }
        }
        if let Some(limit) = self.memory_limit {
            if let Some(rss) = resident_bytes() {
                if rss > limit {
                    return Err(BudgetExceeded {
                        stage: stage.to_string(),
                        reason: format!("resident memory {rss} bytes above limit {limit}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Resident set size from `/proc/self/statm`, where available.
pub fn resident_bytes() -> Option<u64> {
    let statm = std::fs::read_to_string("/proc/self/statm").ok()?;
    let pages: u64 = statm.split_whitespace().nth(1)?.parse().ok()?;
    Some(pages * 4096)
}
