//! Cooperative time budgets for long enumerations.

use std::time::{Duration, Instant};

/// Environment variable overriding per-experiment budgets, in seconds.
pub const BUDGET_ENV: &str = "TORIC_BUDGET_SECS";

#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(secs: f64) -> Self {
        Budget { deadline: Some(Instant::now() + Duration::from_secs_f64(secs)) }
    }

    /// `default_secs`, unless the environment override is set.
    pub fn from_env_or(default_secs: f64) -> Self {
        let secs = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .unwrap_or(default_secs);
        Budget::seconds(secs)
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}
