use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
}

/// First differing entry: input basis tensor (column), output basis tensor
/// (row) and the two sides' values there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<String>,
    pub column: Vec<usize>,
    pub row: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        if let Some(p) = &self.part {
            write!(f, "{p}: ")?;
        }
        write!(
            f,
            "input e({}) output e({}): lhs {} vs rhs {}",
            t(&self.column),
            t(&self.row),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub elapsed: Duration,
}

/// Machine-readable form; timing is left out so identical runs serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    pub fn new(check: &str, outcome: Outcome, witness: Option<Witness>, elapsed: Duration) -> Self {
        VerificationReport {
            check: check.to_string(),
            params: BTreeMap::new(),
            outcome,
            witness,
            elapsed,
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn with_param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn renamed(mut self, check: &str) -> Self {
        self.check = check.to_string();
        self
    }

    /// Holds iff every part holds; carries the first failing part's witness.
    pub fn combine(check: &str, parts: Vec<VerificationReport>) -> Self {
        let elapsed = parts.iter().map(|p| p.elapsed).sum();
        let failed = parts.into_iter().find(|p| !p.holds());
        match failed {
            None => VerificationReport::new(check, Outcome::Holds, None, elapsed),
            Some(p) => {
                let mut w = p.witness.expect("failing report has a witness");
                w.part.get_or_insert(p.check);
                VerificationReport::new(check, Outcome::Fails, Some(w), elapsed)
            }
        }
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            check: self.check.clone(),
            params: self.params.clone(),
            outcome: self.outcome,
            witness: self.witness.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.holds() { "holds" } else { "FAILS" };
        write!(f, "{:<14} {status}", self.check)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "  [{}]", p.join(" "))?;
        }
        write!(f, "  ({:.1} ms)", self.elapsed.as_secs_f64() * 1e3)?;
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}
