//! Work and wall-clock budgets shared by the exhaustive searches.

use std::time::{Duration, Instant};

use crate::error::{HomError, Result};

/// Environment variable that overrides every wall-clock cap, in milliseconds.
pub const BUDGET_ENV: &str = "HOMLAB_BUDGET_MS";

/// Reads the wall-clock cap from the environment, if set and valid.
pub fn env_time_cap() -> Option<Duration> {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(Duration::from_millis)
}

/// Counts work steps and watches an optional deadline.
#[derive(Clone, Debug)]
pub struct Meter {
    steps: u64,
    max_steps: u64,
    deadline: Option<Instant>,
    what: &'static str,
}

impl Meter {
    pub fn new(what: &'static str, max_steps: u64, time_cap: Option<Duration>) -> Self {
        Meter {
            steps: 0,
            max_steps,
            deadline: time_cap.map(|d| Instant::now() + d),
            what,
        }
    }

    pub fn unlimited(what: &'static str) -> Self {
        Meter::new(what, u64::MAX, None)
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Records one step; fails once the step or time budget is spent.
    pub fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(HomError::Budget(format!(
                "{}: more than {} steps",
                self.what, self.max_steps
            )));
        }
        if self.steps & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(HomError::Budget(format!("{}: time cap reached", self.what)));
                }
            }
        }
        Ok(())
    }
}
