//! Truncation-aware verdicts.
//!
//! Asymptotic conditions can never be decided from a finite prefix, so
//! every check returns one of three outcomes: `holds` with named witness
//! constants that re-verify on the checked prefix, `fails` with a concrete
//! counterexample index, or `inconclusive` up to the checked depth.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Named constants exhibited by a `holds` verdict.
pub type Witness = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    /// The condition re-verifies at every checked index with these
    /// constants.
    Holds { witness: Witness },
    /// A concrete index violates the condition; `values` records the
    /// offending quantities (log-scale entries are prefixed `log_`).
    Fails { index: usize, values: Witness },
    /// Neither certified nor refuted within the checked prefix.
    Inconclusive { checked_up_to: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
}

impl Verdict {
    pub fn holds(witness: Witness) -> Self {
        Verdict { status: VerdictStatus::Holds { witness }, trace: None }
    }

    pub fn holds_empty() -> Self {
        Verdict::holds(Witness::new())
    }

    pub fn fails(index: usize, values: Witness) -> Self {
        Verdict { status: VerdictStatus::Fails { index, values }, trace: None }
    }

    pub fn inconclusive(checked_up_to: usize) -> Self {
        Verdict { status: VerdictStatus::Inconclusive { checked_up_to }, trace: None }
    }

    pub fn with_trace(mut self, trace: impl Into<String>) -> Self {
        self.trace = Some(trace.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        matches!(self.status, VerdictStatus::Holds { .. })
    }

    pub fn is_fails(&self) -> bool {
        matches!(self.status, VerdictStatus::Fails { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.status, VerdictStatus::Inconclusive { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.status {
            VerdictStatus::Holds { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn counterexample(&self) -> Option<(usize, &Witness)> {
        match &self.status {
            VerdictStatus::Fails { index, values } => Some((*index, values)),
            _ => None,
        }
    }

    /// Witness constant by name, when this verdict holds and carries it.
    pub fn constant(&self, name: &str) -> Option<f64> {
        self.witness().and_then(|w| w.get(name)).copied()
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            VerdictStatus::Holds { .. } => 0,
            VerdictStatus::Fails { .. } => 2,
            VerdictStatus::Inconclusive { .. } => 3,
        }
    }

    /// Combine two verdicts conjunctively: holds requires both, a failure
    /// on either side dominates, anything else is inconclusive.
    pub fn and(self, other: Verdict, checked_up_to: usize) -> Verdict {
        match (&self.status, &other.status) {
            (VerdictStatus::Fails { .. }, _) => self,
            (_, VerdictStatus::Fails { .. }) => other,
            (VerdictStatus::Holds { witness: a }, VerdictStatus::Holds { witness: b }) => {
                let mut merged = a.clone();
                for (k, v) in b {
                    merged.entry(k.clone()).or_insert(*v);
                }
                let trace = match (&self.trace, &other.trace) {
                    (Some(x), Some(y)) => Some(format!("{x}; {y}")),
                    (Some(x), None) => Some(x.clone()),
                    (None, Some(y)) => Some(y.clone()),
                    (None, None) => None,
                };
                Verdict { status: VerdictStatus::Holds { witness: merged }, trace }
            }
            _ => Verdict::inconclusive(checked_up_to),
        }
    }
}

/// Convenience for building witness maps.
pub fn witness_of(pairs: &[(&str, f64)]) -> Witness {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.status {
            VerdictStatus::Holds { witness } => {
                write!(f, "holds")?;
                if !witness.is_empty() {
                    let parts: Vec<String> =
                        witness.iter().map(|(k, v)| format!("{k} = {v:.6e}")).collect();
                    write!(f, " ({})", parts.join(", "))?;
                }
            }
            VerdictStatus::Fails { index, .. } => write!(f, "fails at p = {index}")?,
            VerdictStatus::Inconclusive { checked_up_to } => {
                write!(f, "inconclusive up to {checked_up_to}")?
            }
        }
        if let Some(trace) = &self.trace {
            write!(f, " [{trace}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_status() {
        assert_eq!(Verdict::holds_empty().exit_code(), 0);
        assert_eq!(Verdict::fails(3, Witness::new()).exit_code(), 2);
        assert_eq!(Verdict::inconclusive(50).exit_code(), 3);
    }

    #[test]
    fn conjunction_prefers_failure() {
        let h = Verdict::holds(witness_of(&[("C", 1.0)]));
        let f = Verdict::fails(2, Witness::new());
        let i = Verdict::inconclusive(10);
        assert!(h.clone().and(f.clone(), 10).is_fails());
        assert!(f.clone().and(h.clone(), 10).is_fails());
        assert!(h.clone().and(i.clone(), 10).is_inconclusive());
        let both = h.clone().and(Verdict::holds(witness_of(&[("H", 2.0)])), 10);
        assert_eq!(both.constant("C"), Some(1.0));
        assert_eq!(both.constant("H"), Some(2.0));
    }

    #[test]
    fn round_trips_through_json() {
        let v = Verdict::holds(witness_of(&[("h", 0.5)])).with_trace("tail max 0.5");
        let s = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(v, back);
    }
}
