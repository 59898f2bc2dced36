//! Per-case verification results.

use std::fmt;

use flatspin_core::FamilySpec;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: String,
}

impl Check {
    pub fn new(name: &'static str, passed: bool, witness: impl Into<String>) -> Check {
        Check { name, passed, witness: witness.into() }
    }
}

/// All checks run on one case. `overall` is the conjunction of the checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<FamilySpec>,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new(case: impl Into<String>, spec: Option<FamilySpec>, checks: Vec<Check>) -> VerificationReport {
        let overall = checks.iter().all(|c| c.passed);
        VerificationReport { case: case.into(), spec, checks, overall }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {}", status(self.overall), self.case)?;
        for c in &self.checks {
            writeln!(f, "    {} {:<22} {}", status(c.passed).to_lowercase(), c.name, c.witness)?;
        }
        Ok(())
    }
}
