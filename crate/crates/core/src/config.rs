use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and caps shared by the analysis pipeline and the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Upper end of the PST / periodicity time search window.
    pub t_max: f64,
    /// Fidelity at or above which a transfer is declared.
    pub threshold: f64,
    /// Eigenvalue clustering tolerance; `None` picks the size-dependent default.
    pub grouping_tolerance: Option<f64>,
    /// Lower bound on `(E_r)[u][u]` for `theta_r` to count as supported at `u`.
    pub support_tolerance: f64,
    /// Largest denominator accepted by the ratio-condition reconstruction.
    pub denominator_bound: u64,
    /// Integer residual `|q x - p|` accepted by the ratio condition.
    pub ratio_residual: f64,
    /// Largest graph for exact integer / rational work.
    pub exact_cap: usize,
    /// Largest graph for the brute-force automorphism checks.
    pub brute_force_cap: usize,
    /// Worker count; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            t_max: 50.0,
            threshold: 1.0 - 1e-9,
            grouping_tolerance: None,
            support_tolerance: 1e-10,
            denominator_bound: 1_000_000,
            ratio_residual: 1e-9,
            exact_cap: 64,
            brute_force_cap: 10,
            jobs: None,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be positive, got {x}")))
            }
        };
        positive("t_max", self.t_max)?;
        positive("support_tolerance", self.support_tolerance)?;
        positive("ratio_residual", self.ratio_residual)?;
        if let Some(tol) = self.grouping_tolerance {
            positive("grouping_tolerance", tol)?;
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "threshold must lie in (0, 1), got {}",
                self.threshold
            )));
        }
        if self.denominator_bound == 0 {
            return Err(Error::InvalidArgument("denominator_bound must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidArgument("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn workers(&self) -> usize {
        self.jobs.unwrap_or_else(crate::par::default_workers)
    }
}
