use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check needs a value that is singular at the chosen parameters.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, witness: Some(witness.into()) }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skipped, witness: Some(reason.into()) }
    }

    /// `Ok` passes; `Err` carries the failure witness.
    pub fn from_outcome(name: impl Into<String>, outcome: std::result::Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Self::pass(name),
            Err(w) => Self::fail(name, w),
        }
    }
}

/// Outcome of a verification campaign. Check order is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub campaign: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub timing_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn new(campaign: impl Into<String>) -> Self {
        Report {
            campaign: campaign.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            timing_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// Merges another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}/{}", c.name);
            c
        }));
    }

    pub fn sort_checks(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    /// Stops the clock.
    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.timing_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// No check failed (skipped checks do not count as failures).
    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "campaign {}", self.campaign)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            write!(f, "{tag} {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, "  -- {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{} passed, {} failed, {} skipped in {} ms",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.timing_ms
        )
    }
}
