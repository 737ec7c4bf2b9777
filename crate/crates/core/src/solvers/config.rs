use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Budget of the covering solver, kept separate because every covering
/// iteration touches the whole working probe set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringBudget {
    pub restarts: usize,
    pub max_iters: usize,
    /// Full probe set size is `probe_per_dim * dim`.
    pub probe_per_dim: usize,
    /// Working probe subset size used inside the optimizer is `working_per_dim * dim`.
    pub working_per_dim: usize,
    /// Exchange rounds between the working set and the full probe set.
    pub refine_rounds: usize,
    pub max_dim: usize,
}

impl Default for CoveringBudget {
    fn default() -> Self {
        CoveringBudget {
            restarts: 8,
            max_iters: 400,
            probe_per_dim: 10_000,
            working_per_dim: 300,
            refine_rounds: 4,
            max_dim: 8,
        }
    }
}

/// Shared solver configuration. Step sizes and softmin temperatures decay
/// geometrically from their initial to their final values over a restart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step0: f64,
    pub step_min: f64,
    pub tau0: f64,
    pub tau_min: f64,
    pub seed: u64,
    pub tol: f64,
    pub covering: CoveringBudget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 64,
            max_iters: 2000,
            step0: 0.05,
            step_min: 1e-4,
            tau0: 0.5,
            tau_min: 1e-3,
            seed: 42,
            tol: 1e-6,
            covering: CoveringBudget::default(),
        }
    }
}

impl SolverConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    /// Smaller budget for nested or exploratory runs.
    pub fn quick() -> Self {
        SolverConfig {
            restarts: 8,
            max_iters: 600,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("solver config: {what}")));
        if self.restarts == 0 || self.max_iters == 0 {
            return bad("restarts and max_iters must be positive");
        }
        if !(self.step0 > 0.0 && self.step_min > 0.0 && self.step_min <= self.step0) {
            return bad("steps must satisfy 0 < step_min <= step0");
        }
        if !(self.tau0 > 0.0 && self.tau_min > 0.0 && self.tau_min < self.tau0) {
            return bad("temperatures must satisfy 0 < tau_min < tau0");
        }
        if !(self.tol > 0.0) {
            return bad("tol must be positive");
        }
        let c = &self.covering;
        if c.restarts == 0 || c.max_iters == 0 || c.probe_per_dim == 0 || c.working_per_dim == 0 {
            return bad("covering budget entries must be positive");
        }
        Ok(())
    }

    /// Short stable hash of the configuration.
    pub fn fingerprint(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Geometric interpolation `a -> b` at fraction `t` in `[0, 1]`.
    pub(crate) fn geometric(a: f64, b: f64, t: f64) -> f64 {
        a * (b / a).powf(t.clamp(0.0, 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_fingerprint_is_stable() {
        let c = SolverConfig::default();
        c.validate().unwrap();
        assert_eq!(c.fingerprint(), SolverConfig::default().fingerprint());
        assert_ne!(c.fingerprint(), c.clone().with_seed(7).fingerprint());
    }

    #[test]
    fn rejects_increasing_temperature() {
        let c = SolverConfig {
            tau_min: 1.0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
