//! Predicate outcomes shared by the analysis, verdict and generator modules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Outcome of a guarded claim.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// The claim's hypotheses do not hold for this input.
    Vacuous,
    Holds,
    Falsified,
}

/// Every checkable claim the verifier knows about.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    /// `M = |A| + h_A - 1`, `N = |B| + h_B - 1`, `h_{A+B} = h_A + h_B - r`,
    /// plus the equivalence of the hypothesis reformulations.
    Identities,
    NeutralZone,
    KeyLemma,
    NoDualStability,
    StabilityIdentities,
    Ordering,
    Frontier,
    ReflectionDuality,
    Theorem,
    Corollary,
    CitedDiam,
    Decomposition,
    FrobeniusPrefix,
}

impl Predicate {
    pub const ALL: [Predicate; 13] = [
        Predicate::Identities,
        Predicate::NeutralZone,
        Predicate::KeyLemma,
        Predicate::NoDualStability,
        Predicate::StabilityIdentities,
        Predicate::Ordering,
        Predicate::Frontier,
        Predicate::ReflectionDuality,
        Predicate::Theorem,
        Predicate::Corollary,
        Predicate::CitedDiam,
        Predicate::Decomposition,
        Predicate::FrobeniusPrefix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Identities => "identities",
            Predicate::NeutralZone => "neutral-zone",
            Predicate::KeyLemma => "key-lemma",
            Predicate::NoDualStability => "no-dual-stability",
            Predicate::StabilityIdentities => "stability-identities",
            Predicate::Ordering => "ordering",
            Predicate::Frontier => "frontier",
            Predicate::ReflectionDuality => "reflection-duality",
            Predicate::Theorem => "theorem",
            Predicate::Corollary => "corollary",
            Predicate::CitedDiam => "cited-diam",
            Predicate::Decomposition => "decomposition",
            Predicate::FrobeniusPrefix => "frobenius-prefix",
        }
    }

    fn bit(self) -> u32 {
        1 << self as u32
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown predicate `{s}`")))
    }
}

/// A subset of [`Predicate::ALL`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Selection(u32);

impl Selection {
    pub fn all() -> Self {
        Selection::only(Predicate::ALL)
    }

    pub fn only<I: IntoIterator<Item = Predicate>>(preds: I) -> Self {
        Selection(preds.into_iter().fold(0, |m, p| m | p.bit()))
    }

    pub fn contains(self, p: Predicate) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Predicate> {
        Predicate::ALL
            .into_iter()
            .filter(move |&p| self.contains(p))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl Default for Selection {
    fn default() -> Self {
        Selection::all()
    }
}

/// Result of evaluating one predicate on one input.
///
/// `violations` is empty unless the status is [`Status::Falsified`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PredicateReport {
    pub predicate: Predicate,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

impl PredicateReport {
    pub fn vacuous(predicate: Predicate) -> Self {
        PredicateReport {
            predicate,
            status: Status::Vacuous,
            violations: Vec::new(),
        }
    }

    pub fn from_violations(predicate: Predicate, violations: Vec<String>) -> Self {
        let status = if violations.is_empty() {
            Status::Holds
        } else {
            Status::Falsified
        };
        PredicateReport {
            predicate,
            status,
            violations,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn falsified(&self) -> bool {
        self.status == Status::Falsified
    }
}

/// Collects violation messages; formatting only happens on failure.
pub(crate) struct Checks(Vec<String>);

impl Checks {
    pub fn new() -> Self {
        Checks(Vec::new())
    }

    pub fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.0.push(msg());
        }
    }

    pub fn into_violations(self) -> Vec<String> {
        self.0
    }

    pub fn finish(self, predicate: Predicate) -> PredicateReport {
        PredicateReport::from_violations(predicate, self.0)
    }
}
