use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::MinimizeError;

/// Five minutes, the cutoff used for all benchmark runs by default.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Ok,
    Timeout,
    CapacityExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::CapacityExceeded => "capacity-exceeded",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ok" => Ok(Status::Ok),
            "timeout" => Ok(Status::Timeout),
            "capacity-exceeded" => Ok(Status::CapacityExceeded),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

/// Counters reported by every minimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    /// Outer-loop passes, including the final pass that observes no change.
    pub iterations: u64,
    /// Alphabet-doubling rounds; zero for algorithms without a closure step.
    pub closure_steps: u64,
    pub elapsed_ms: f64,
    pub peak_memory_bytes: u64,
    pub status: Status,
}

impl RunStats {
    pub(crate) fn ok(iterations: u64, clock: &Deadline, peak_memory_bytes: u64) -> RunStats {
        RunStats {
            iterations,
            closure_steps: 0,
            elapsed_ms: clock.elapsed_ms(),
            peak_memory_bytes,
            status: Status::Ok,
        }
    }
}

/// Resource limits for a single run. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub timeout: Option<Duration>,
    pub max_memory_bytes: Option<u64>,
}

impl Limits {
    pub const fn unlimited() -> Limits {
        Limits {
            timeout: None,
            max_memory_bytes: None,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Limits {
        self.timeout = Some(timeout);
        self
    }

    pub fn with_max_memory(mut self, bytes: u64) -> Limits {
        self.max_memory_bytes = Some(bytes);
        self
    }

    /// Fails with `CapacityExceeded` when `required_bytes` is over the limit.
    pub fn check_memory(&self, required_bytes: u64) -> Result<(), MinimizeError> {
        match self.max_memory_bytes {
            Some(limit) if required_bytes > limit => Err(MinimizeError::CapacityExceeded {
                required_bytes,
                limit_bytes: limit,
            }),
            _ => Ok(()),
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::unlimited().with_timeout(DEFAULT_TIMEOUT)
    }
}

/// Wall clock for a run together with its optional timeout.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    start: Instant,
    timeout: Option<Duration>,
}

impl Deadline {
    pub fn start(timeout: Option<Duration>) -> Deadline {
        Deadline {
            start: Instant::now(),
            timeout,
        }
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.start.elapsed().as_secs_f64() * 1e3
    }

    pub fn expired(&self) -> bool {
        self.timeout.is_some_and(|t| self.start.elapsed() > t)
    }

    /// `Err(Timeout)` once the deadline has passed.
    pub fn check(&self, iterations: u64) -> Result<(), MinimizeError> {
        if self.expired() {
            Err(MinimizeError::Timeout {
                elapsed_ms: self.elapsed_ms(),
                iterations,
            })
        } else {
            Ok(())
        }
    }
}
