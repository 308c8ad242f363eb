use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of a semi-decision procedure.
///
/// `Proved` and `Refuted` carry witnesses that can be re-checked directly;
/// `Unknown` records the bound that was exhausted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict<P, R = P> {
    Proved(P),
    Refuted(R),
    Unknown(Exhausted),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhausted {
    pub bound: usize,
    pub reason: String,
}

impl Exhausted {
    pub fn new(bound: usize, reason: impl Into<String>) -> Self {
        Self {
            bound,
            reason: reason.into(),
        }
    }
}

/// The bare outcome of a verdict, used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Proved,
    Refuted,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Proved => "proved",
            Outcome::Refuted => "refuted",
            Outcome::Unknown => "unknown",
        })
    }
}

impl<P, R> Verdict<P, R> {
    pub fn unknown(bound: usize, reason: impl Into<String>) -> Self {
        Verdict::Unknown(Exhausted::new(bound, reason))
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Proved(_) => Outcome::Proved,
            Verdict::Refuted(_) => Outcome::Refuted,
            Verdict::Unknown(_) => Outcome::Unknown,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn proved(&self) -> Option<&P> {
        match self {
            Verdict::Proved(p) => Some(p),
            _ => None,
        }
    }

    pub fn refuted(&self) -> Option<&R> {
        match self {
            Verdict::Refuted(r) => Some(r),
            _ => None,
        }
    }
}
