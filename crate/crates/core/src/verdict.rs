//! Three-valued bounded-horizon verdicts.
//!
//! The properties being checked quantify over infinitely many words,
//! points or horizons, so a checker never claims unbounded truth without
//! a finite certificate. `VerifiedUpTo` always carries its bound;
//! `Refuted` always carries a finite, re-checkable witness.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::shift::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    VerifiedUpTo { bound: u64 },
    Refuted,
    Unknown,
}

/// Structured witness data, replayable through the engine primitives.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Word>,
    /// Cover-cell index of the source set, when the property is pairwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_from: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_to: Option<usize>,
    /// Display form of a witnessing point or set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Witness {
    pub fn word(w: Word) -> Self {
        Witness {
            word: Some(w),
            ..Default::default()
        }
    }

    pub fn pair(from: usize, to: usize) -> Self {
        Witness {
            cell_from: Some(from),
            cell_to: Some(to),
            ..Default::default()
        }
    }

    pub fn point(p: String) -> Self {
        Witness {
            point: Some(p),
            ..Default::default()
        }
    }

    pub fn detail(d: impl Into<String>) -> Self {
        Witness {
            detail: Some(d.into()),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub status: Status,
    /// Set when a truncation boundary was touched anywhere the verdict
    /// depends on; such verdicts are contaminated by desk-scale limits.
    pub boundary: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Human-readable certificate lines (gap tables, drift bounds, ...).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub evidence: Vec<String>,
}

impl Verdict {
    pub fn verified(bound: u64) -> Self {
        Verdict {
            status: Status::VerifiedUpTo { bound },
            boundary: false,
            witness: None,
            evidence: Vec::new(),
        }
    }

    pub fn refuted(witness: Witness) -> Self {
        Verdict {
            status: Status::Refuted,
            boundary: false,
            witness: Some(witness),
            evidence: Vec::new(),
        }
    }

    pub fn unknown() -> Self {
        Verdict {
            status: Status::Unknown,
            boundary: false,
            witness: None,
            evidence: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_evidence(mut self, line: impl Into<String>) -> Self {
        self.evidence.push(line.into());
        self
    }

    pub fn with_boundary(mut self, flag: bool) -> Self {
        self.boundary = self.boundary || flag;
        self
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.status, Status::VerifiedUpTo { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.status, Status::Refuted)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.status, Status::Unknown)
    }

    pub fn status_name(&self) -> &'static str {
        match self.status {
            Status::VerifiedUpTo { .. } => "verified",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::VerifiedUpTo { bound } => write!(f, "VERIFIED_UP_TO({bound})")?,
            Status::Refuted => write!(f, "REFUTED")?,
            Status::Unknown => write!(f, "UNKNOWN")?,
        }
        if self.boundary {
            write!(f, " [boundary]")?;
        }
        Ok(())
    }
}
