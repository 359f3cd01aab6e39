//! Run-scale configuration shared by the library and the CLI.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// Caps and defaults for desk-scale runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Truncation order for torus series (bound on |v|_1).
    pub trunc_order: usize,
    /// Primes used for point counting; strictly increasing.
    pub primes: Vec<u32>,
    /// Cap on the total dimension of enumerated module representations.
    pub max_total_dim: usize,
    /// Cap on mutation-sequence length.
    pub max_depth: usize,
    /// Iteration cap for potential reduction.
    pub reduction_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            trunc_order: 6,
            primes: vec![2, 3, 5],
            max_total_dim: 4,
            max_depth: 10,
            reduction_cap: 64,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trunc_order == 0
            || self.max_total_dim == 0
            || self.max_depth == 0
            || self.reduction_cap == 0
        {
            return Err(ConfigError::Invalid("all caps must be positive".into()));
        }
        if self.primes.is_empty() {
            return Err(ConfigError::Invalid("prime list is empty".into()));
        }
        if !self.primes.windows(2).all(|w| w[0] < w[1]) {
            return Err(ConfigError::Invalid(
                "primes must be strictly increasing".into(),
            ));
        }
        for &p in &self.primes {
            if !is_prime(p) {
                return Err(ConfigError::Invalid(format!("{p} is not prime")));
            }
        }
        Ok(())
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
