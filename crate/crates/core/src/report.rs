//! Pass/fail summaries for grid checks, shared by the CLI and the tests.

use std::fmt;

/// Outcome of a check run over a grid of inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: String,
    /// Number of grid points evaluated.
    pub count: usize,
    /// Grid points that failed (value over tolerance, or a false predicate).
    pub failures: usize,
    /// Largest residual seen; 0 for exact checks.
    pub worst: f64,
    /// Tolerance applied to `worst`; 0 for exact checks.
    pub tol: f64,
    /// First failing input, for diagnostics.
    pub first_failure: Option<String>,
}

impl CheckSummary {
    pub fn new(name: impl Into<String>, tol: f64) -> Self {
        CheckSummary { name: name.into(), count: 0, failures: 0, worst: 0.0, tol, first_failure: None }
    }

    /// Record a residual; it fails when above the tolerance or not finite.
    pub fn residual(&mut self, value: f64, at: impl FnOnce() -> String) {
        self.count += 1;
        if value.is_nan() || value > self.worst {
            self.worst = if value.is_nan() { f64::NAN } else { value };
        }
        if !(value <= self.tol) {
            self.fail(at);
        }
    }

    /// Record an exact predicate.
    pub fn exact(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.fail(at);
        }
    }

    fn fail(&mut self, at: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(at());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.count > 0
    }
}

impl fmt::Display for CheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} points, {} failures, worst {:.3e} (tol {:.1e})",
            self.name, self.count, self.failures, self.worst, self.tol
        )?;
        if let Some(at) = &self.first_failure {
            write!(f, "; first failure at {at}")?;
        }
        Ok(())
    }
}

/// |a - b| / max(|a|, |b|, floor).
pub fn rel_diff(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_failures() {
        let mut s = CheckSummary::new("demo", 1e-3);
        s.residual(1e-4, || "a".into());
        assert!(s.passed());
        s.residual(f64::NAN, || "b".into());
        assert!(!s.passed());
        assert_eq!(s.first_failure.as_deref(), Some("b"));
        assert!(s.to_string().starts_with("FAIL demo"));
        assert!(!CheckSummary::new("empty", 0.0).passed());
    }

    #[test]
    fn relative_difference() {
        assert_eq!(rel_diff(1.0, 1.0, 1e-300), 0.0);
        assert!((rel_diff(2.0, 1.0, 1e-300) - 0.5).abs() < 1e-15);
    }
}
