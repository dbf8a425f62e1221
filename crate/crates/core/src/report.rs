//! Report records shared by the estimators and the command-line runner.

use serde::Serialize;

/// Outcome of comparing a fitted exponent with its prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

impl Verdict {
    /// Consistent iff |fitted - predicted| ≤ tol and stderr ≤ tol/2;
    /// inconclusive when the fit is too noisy to decide.
    pub fn from_fit(fitted: f64, predicted: f64, stderr: f64, tol: f64) -> Self {
        if stderr > tol / 2.0 {
            Verdict::Inconclusive
        } else if (fitted - predicted).abs() <= tol {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Inconsistent => "INCONSISTENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// A fitted power law over a sweep of scales, with its prediction.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    /// Sweep label (matrix preset and method).
    pub preset: String,
    pub method: String,
    /// Scale values (δ or λ).
    pub scales: Vec<f64>,
    /// Measured quantities, one per scale.
    pub values: Vec<f64>,
    /// Fitted exponent c in value ≈ scale^(-c) (δ sweeps) or the fitted
    /// log₂-slope against j (λ = 2^j sweeps).
    pub slope: f64,
    pub stderr: f64,
    pub predicted: f64,
    pub verdict: Verdict,
}

impl ScalingReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("scale,value\n");
        for (a, b) in self.scales.iter().zip(self.values.iter()) {
            s.push_str(&format!("{a},{b}\n"));
        }
        s
    }

    /// Two-column data file (log₂ scale, log₂ value) for plotting.
    pub fn to_plot_data(&self) -> String {
        let mut s = String::new();
        for (a, b) in self.scales.iter().zip(self.values.iter()) {
            s.push_str(&format!("{} {}\n", a.log2(), b.log2()));
        }
        s
    }
}
