//! Law reports shared by every checker.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// How a law was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Every element of the law's domain was evaluated.
    Exhaustive,
    /// Evaluated once on a generic element with one indeterminate
    /// coefficient per basis vector; covers every element of the domain.
    GenericElement,
    /// Seeded random instances only (infinite carriers).
    Sampled,
}

/// A replayable witness of a law violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Size of the canonical carrier `X = {0..n-1}` the instance lives over.
    pub carrier_size: Option<usize>,
    /// Functions between canonical carriers the instance depends on
    /// (naturality and functoriality laws), in order of application.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub functions: Vec<FnWitness>,
    /// Canonical encoding of the offending element.
    pub element: String,
    /// Position of the element in the canonical enumeration of the domain.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element_index: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

/// A function `{0..dom-1} → {0..cod-1}` given by its table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnWitness {
    pub table: Vec<usize>,
    pub cod_size: usize,
}

impl FnWitness {
    pub fn of(f: &crate::finset::FinFn) -> Self {
        FnWitness {
            table: f.table().to_vec(),
            cod_size: f.cod().len(),
        }
    }
}

impl Counterexample {
    pub fn new(carrier_size: Option<usize>, element: String, lhs: String, rhs: String) -> Self {
        Counterexample {
            carrier_size,
            functions: Vec::new(),
            element,
            element_index: None,
            lhs,
            rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    pub method: Method,
    /// Number of (carrier, element) instances evaluated; a generic element
    /// counts once.
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub subject: String,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>) -> Self {
        LawReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Records one batch of instances for `law`. Batches for the same law are
    /// merged; the first counterexample recorded is kept, so callers that
    /// scan carriers in increasing size report a minimal one.
    pub fn record(
        &mut self,
        law: &str,
        method: Method,
        instances: u64,
        counterexample: Option<Counterexample>,
    ) {
        if let Some(c) = self.checks.iter_mut().find(|c| c.law == law) {
            c.instances += instances;
            c.method = c.method.max(method);
            if c.counterexample.is_none() {
                c.passed &= counterexample.is_none();
                c.counterexample = counterexample;
            }
            return;
        }
        self.checks.push(LawCheck {
            law: law.to_string(),
            passed: counterexample.is_none(),
            method,
            instances,
            counterexample,
        });
    }

    pub fn merge(&mut self, other: LawReport) {
        for c in other.checks {
            self.record(&c.law, c.method, c.instances, c.counterexample);
        }
    }

    /// Same report with each law name prefixed, for composite reports.
    pub fn prefixed(mut self, prefix: &str) -> LawReport {
        for c in &mut self.checks {
            c.law = format!("{prefix}{}", c.law);
        }
        self
    }
}

/// Both sides of a failed equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub lhs: String,
    pub rhs: String,
}

impl Mismatch {
    pub fn of<T: std::fmt::Display>(lhs: &T, rhs: &T) -> Self {
        Mismatch {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Compares two sides and returns the mismatch, if any.
pub fn compare<T: PartialEq + std::fmt::Display>(lhs: T, rhs: T) -> Option<Mismatch> {
    (lhs != rhs).then(|| Mismatch::of(&lhs, &rhs))
}

/// Evaluates `check` on every item, in parallel, and returns the first
/// violation in item order together with its index. Errors win over later
/// violations in the same order.
pub fn first_violation<T, F>(items: &[T], check: F) -> Result<Option<(usize, Mismatch)>>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Mismatch>> + Sync,
{
    let hit = items
        .par_iter()
        .enumerate()
        .find_map_first(|(i, item)| match check(item) {
            Ok(None) => None,
            Ok(Some(m)) => Some(Ok((i, m))),
            Err(e) => Some(Err(e)),
        });
    hit.transpose()
}
