//! Check records shared by every verification routine.

use serde::{Deserialize, Serialize};

/// One verified identity: the worst residual seen and the bound it is held to.
///
/// Exact checks carry integer residuals and a zero tolerance; they pass only
/// when the residual is exactly zero. Numerical checks pass when
/// `max_residual < tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub exact: bool,
    pub pass: bool,
}

impl CheckRecord {
    pub fn numeric(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        CheckRecord {
            name: name.into(),
            max_residual,
            tolerance,
            exact: false,
            pass: max_residual.is_finite() && max_residual < tolerance,
        }
    }

    pub fn exact(name: impl Into<String>, max_residual: i64) -> Self {
        CheckRecord {
            name: name.into(),
            max_residual: max_residual.unsigned_abs() as f64,
            tolerance: 0.0,
            exact: true,
            pass: max_residual == 0,
        }
    }

    /// A check that is a yes/no statement rather than a residual.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        CheckRecord {
            name: name.into(),
            max_residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            exact: true,
            pass: ok,
        }
    }
}

/// An ordered list of check records.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckList {
    pub checks: Vec<CheckRecord>,
}

impl CheckList {
    pub fn push(&mut self, rec: CheckRecord) {
        self.checks.push(rec);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, other: CheckList) {
        self.checks.extend(other.checks);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_matches_residual_vs_tolerance() {
        assert!(CheckRecord::numeric("a", 1e-12, 1e-9).pass);
        assert!(!CheckRecord::numeric("a", 1e-9, 1e-9).pass);
        assert!(!CheckRecord::numeric("a", f64::NAN, 1e-9).pass);
        assert!(CheckRecord::exact("b", 0).pass);
        assert!(!CheckRecord::exact("b", 1).pass);
    }
}
