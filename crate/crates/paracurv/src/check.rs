//! Structured results of sampled identity checks.

use serde::Serialize;

/// Outcome of one identity check: residual statistics over the chart's
/// sample points, the tolerance used, and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub label: String,
    pub max_residual: f64,
    pub tol: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_point: Option<Vec<f64>>,
}

impl CheckReport {
    /// Aggregates per-point residuals; `residuals` yields (residual, point).
    pub fn from_residuals<'a, I>(label: impl Into<String>, tol: f64, residuals: I) -> CheckReport
    where
        I: IntoIterator<Item = (f64, &'a [f64])>,
    {
        let mut max = 0.0f64;
        let mut worst: Option<Vec<f64>> = None;
        for (r, p) in residuals {
            if r > max || worst.is_none() {
                max = r.max(max);
                worst = Some(p.to_vec());
            }
        }
        CheckReport {
            label: label.into(),
            max_residual: max,
            tol,
            passed: max <= tol,
            worst_point: worst,
        }
    }

    /// Copy with floats rounded to 15 significant digits for stable reports.
    pub fn rounded(&self) -> CheckReport {
        CheckReport {
            label: self.label.clone(),
            max_residual: sig15(self.max_residual),
            tol: self.tol,
            passed: self.passed,
            worst_point: self
                .worst_point
                .as_ref()
                .map(|p| p.iter().copied().map(sig15).collect()),
        }
    }
}

/// Rounds to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}
