use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceKind {
    Absolute,
    Relative,
}

/// One numeric check with its verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub tolerance_kind: ToleranceKind,
    pub passed: bool,
    pub samples: u64,
    pub seed: u64,
}

impl VerificationReport {
    pub fn new(
        check: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
        tolerance_kind: ToleranceKind,
        samples: u64,
        seed: u64,
    ) -> Self {
        let bound = match tolerance_kind {
            ToleranceKind::Absolute => tolerance,
            ToleranceKind::Relative => tolerance * expected.abs(),
        };
        let passed = (measured - expected).abs() <= bound;
        VerificationReport {
            check: check.into(),
            measured,
            expected,
            tolerance,
            tolerance_kind,
            passed,
            samples,
            seed,
        }
    }

    /// A check whose measured value is an error magnitude bounded by `tolerance`.
    pub fn bound(check: impl Into<String>, error: f64, tolerance: f64, samples: u64, seed: u64) -> Self {
        Self::new(check, error, 0.0, tolerance, ToleranceKind::Absolute, samples, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert!(VerificationReport::new("a", 1.0 + 1e-13, 1.0, 1e-12, ToleranceKind::Relative, 1, 0).passed);
        assert!(!VerificationReport::new("a", 2.0, 1.0, 0.5, ToleranceKind::Absolute, 1, 0).passed);
        assert!(!VerificationReport::bound("nan", f64::NAN, 1.0, 1, 0).passed);
        let json = serde_json::to_string(&VerificationReport::bound("b", 0.0, 1.0, 3, 7)).unwrap();
        assert!(json.contains("\"tolerance_kind\":\"absolute\""));
        assert!(json.contains("\"seed\":7"));
    }
}
