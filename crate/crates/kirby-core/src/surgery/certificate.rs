//! Machine-checkable certificates for composite surgeries.
//!
//! A certificate lists the construction steps (every move), the resulting
//! handle counts, and a series of named checks. Each check records where its
//! expected value comes from: `theorem` for a value stated by the result
//! being verified, `bookkeeping` for derived arithmetic.

use std::fmt;

use serde_json::{json, Value};

use crate::handlebody::HandleCounts;

/// Outcome of one certificate check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not decidable from the data in scope (e.g. a configuration outside
    /// the proved range, run with an explicit override).
    Indeterminate,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Provenance of a check's expected value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckSource {
    /// The expected value is the stated conclusion being verified.
    Theorem,
    /// The expected value is derived arithmetic over the move sequence.
    Bookkeeping,
}

impl fmt::Display for CheckSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckSource::Theorem => write!(f, "theorem"),
            CheckSource::Bookkeeping => write!(f, "bookkeeping"),
        }
    }
}

/// One named invariant check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
    pub source: CheckSource,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(
        name: &str,
        expected: T,
        actual: T,
        source: CheckSource,
    ) -> Self {
        Check {
            name: name.to_string(),
            status: if expected == actual {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            expected: expected.to_string(),
            actual: actual.to_string(),
            source,
        }
    }

    pub fn indeterminate(name: &str, expected: &str, actual: &str) -> Self {
        Check {
            name: name.to_string(),
            status: CheckStatus::Indeterminate,
            expected: expected.to_string(),
            actual: actual.to_string(),
            source: CheckSource::Theorem,
        }
    }
}

/// The verifiable output of a surgery pipeline.
#[derive(Debug, Clone)]
pub struct Certificate {
    title: String,
    construction: Vec<String>,
    counts: HandleCounts,
    chi: i64,
    checks: Vec<Check>,
}

impl Certificate {
    /// Builds a certificate; the Euler characteristic is pinned to the
    /// alternating sum of the counts.
    pub fn new(title: impl Into<String>, construction: Vec<String>, counts: HandleCounts) -> Self {
        Certificate {
            title: title.into(),
            construction,
            counts,
            chi: counts.euler(),
            checks: Vec::new(),
        }
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn construction(&self) -> &[String] {
        &self.construction
    }

    pub fn counts(&self) -> HandleCounts {
        self.counts
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// True when every check passed.
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    /// True when no check failed (indeterminate checks allowed).
    pub fn sound(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// Prefixes every check name and splices another certificate's
    /// construction and checks into this one.
    pub fn absorb(&mut self, prefix: &str, other: Certificate) {
        self.construction.extend(other.construction);
        for mut check in other.checks {
            check.name = format!("{prefix}{}", check.name);
            self.checks.push(check);
        }
    }

    /// Machine-readable form: `{construction, counts, chi, checks[]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "title": self.title,
            "construction": self.construction,
            "counts": {
                "h0": self.counts.h0,
                "h1": self.counts.h1,
                "h2": self.counts.h2,
                "h3": self.counts.h3,
                "h4": self.counts.h4,
            },
            "chi": self.chi,
            "checks": self
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "status": c.status.to_string(),
                        "expected": c.expected,
                        "actual": c.actual,
                        "source": c.source.to_string(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate: {}", self.title)?;
        writeln!(f, "construction:")?;
        for (i, step) in self.construction.iter().enumerate() {
            writeln!(f, "  {:>3}. {step}", i + 1)?;
        }
        writeln!(
            f,
            "result: {}  (chi = {})",
            self.counts.union_expression(),
            self.chi
        )?;
        writeln!(f, "checks:")?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: expected {}, got {}  [{}]",
                c.status, c.name, c.expected, c.actual, c.source
            )?;
        }
        let passed = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Pass)
            .count();
        let status = if self.verified() {
            "VERIFIED".to_string()
        } else if self.sound() {
            format!("SOUND ({} of {} checks indeterminate)", self.checks.len() - passed, self.checks.len())
        } else {
            "FAILED".to_string()
        };
        write!(f, "status: {status} ({passed}/{} checks passed)", self.checks.len())
    }
}
