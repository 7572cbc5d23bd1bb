//! Run-wide settings shared by the CLI and the test suites.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hypercube::{DEFAULT_MAX_N, MAX_SUPPORTED_N};
use crate::rep::DEFAULT_TOL;

/// Environment variable overriding [`RunConfig::tolerance`].
pub const TOL_ENV: &str = "QCUBE_TOL";

pub const DEFAULT_RESOLUTION: usize = 10;
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tolerance: f64,
    pub max_n: usize,
    pub grid_resolution: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOL, max_n: DEFAULT_MAX_N, grid_resolution: DEFAULT_RESOLUTION, seed: DEFAULT_SEED }
    }
}

impl RunConfig {
    /// Defaults, with the tolerance taken from `QCUBE_TOL` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(raw) = std::env::var(TOL_ENV) {
            cfg.tolerance = raw.trim().parse().map_err(|e| invalid(format!("{TOL_ENV}={raw:?}: {e}")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(invalid(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_n == 0 || self.max_n > MAX_SUPPORTED_N {
            return Err(invalid(format!("max_n must lie in 1..={MAX_SUPPORTED_N}")));
        }
        if self.grid_resolution == 0 {
            return Err(invalid("grid resolution must be at least 1"));
        }
        Ok(())
    }

    /// Rejects `n` above `max_n`.
    pub fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_n {
            return Err(invalid(format!("n = {n} outside 1..={}", self.max_n)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = RunConfig::default();
        assert_eq!((c.tolerance, c.max_n, c.grid_resolution), (1e-10, 8, 10));
        assert!(c.validate().is_ok());
        assert!(c.check_n(9).is_err());
    }

    #[test]
    fn invalid_values() {
        assert!(RunConfig { tolerance: 0.0, ..Default::default() }.validate().is_err());
        assert!(RunConfig { tolerance: f64::NAN, ..Default::default() }.validate().is_err());
        assert!(RunConfig { max_n: 0, ..Default::default() }.validate().is_err());
        assert!(RunConfig { grid_resolution: 0, ..Default::default() }.validate().is_err());
    }
}
