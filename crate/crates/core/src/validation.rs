//! Validation reports.

use std::fmt;

use serde::Serialize;

/// Structural law checked by the validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ModelLaw {
    #[serde(rename = "idempotence-yes")]
    IdempotenceYes,
    #[serde(rename = "idempotence-no")]
    IdempotenceNo,
    #[serde(rename = "annihilation")]
    Annihilation,
    #[serde(rename = "consistency")]
    Consistency,
    #[serde(rename = "exclusion")]
    Exclusion,
    #[serde(rename = "completeness")]
    Completeness,
    #[serde(rename = "builtin")]
    Builtin,
    #[serde(rename = "partition")]
    Partition,
}

impl ModelLaw {
    pub fn id(self) -> &'static str {
        match self {
            ModelLaw::IdempotenceYes => "idempotence-yes",
            ModelLaw::IdempotenceNo => "idempotence-no",
            ModelLaw::Annihilation => "annihilation",
            ModelLaw::Consistency => "consistency",
            ModelLaw::Exclusion => "exclusion",
            ModelLaw::Completeness => "completeness",
            ModelLaw::Builtin => "builtin",
            ModelLaw::Partition => "partition",
        }
    }
}

impl fmt::Display for ModelLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One failed law with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: ModelLaw,
    /// Proposition or observable the law was checked on.
    pub subject: String,
    /// Spectrum values involved (exclusion reports the offending pair).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<String>,
    /// Witness state, if the law is pointwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<16} {}", self.law.id(), self.subject)?;
        if !self.values.is_empty() {
            write!(f, " [{}]", self.values.join(", "))?;
        }
        if let Some(state) = &self.state {
            write!(f, " @ {state}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Violation> {
        self.violations.iter()
    }

    pub fn has_law(&self, law: ModelLaw) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl<'a> IntoIterator for &'a Report {
    type Item = &'a Violation;
    type IntoIter = std::slice::Iter<'a, Violation>;

    fn into_iter(self) -> Self::IntoIter {
        self.violations.iter()
    }
}
