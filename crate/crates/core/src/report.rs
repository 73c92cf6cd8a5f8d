//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub id: String,
    /// Human-readable name of the identity being checked.
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// A discrepancy between a transcribed printed value and the computed one.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Erratum {
    pub table: String,
    pub row: usize,
    pub col: usize,
    /// Serialized under the report schema's key for the transcribed expression.
    #[serde(rename = "paper_value_expr")]
    pub printed_expr: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_value: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_value: Option<[f64; 2]>,
    pub note: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub errata: Vec<Erratum>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        Self { suite: suite.to_string(), pass: true, ..Default::default() }
    }

    /// Records a residual check. NaN residuals always fail.
    pub fn check(&mut self, id: &str, anchor: &str, residual: f64, tol: f64) -> bool {
        let pass = residual.is_finite() && residual <= tol;
        self.checks.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            residual,
            tol,
            pass,
        });
        self.pass &= pass;
        pass
    }

    pub fn flag(&mut self, msg: impl Into<String>) {
        self.flags.push(msg.into());
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
        self.errata.extend(other.errata);
        self.flags.extend(other.flags);
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |a, c| a.max(c.residual))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_fails_and_roundtrip() {
        let mut r = VerificationReport::new("x");
        assert!(r.check("a", "ok", 1e-15, 1e-12));
        assert!(!r.check("b", "nan", f64::NAN, 1e-12));
        assert!(!r.pass);
        let mut ok = VerificationReport::new("y");
        ok.check("a", "ok", 1e-15, 1e-12);
        let back: VerificationReport = serde_json::from_str(&ok.to_json()).unwrap();
        assert_eq!(back, ok);
    }
}
