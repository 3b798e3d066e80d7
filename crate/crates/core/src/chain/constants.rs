//! The named-constant ledger: every constant consumed by the inequality
//! chain carries a value enclosure and a provenance. Reconstructions from
//! displayed derivations record their closed form; a missing constant
//! aborts the run, it is never defaulted silently.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Interval;
use crate::report::Enclosure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CertifiedComputed,
    ReconstructedClosedForm,
    UserConfigured,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantEntry {
    pub value: Enclosure,
    pub provenance: Provenance,
    pub derivation: String,
    #[serde(skip)]
    pub interval: Interval,
}

/// Ordered ledger of the chain constants.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ConstantLedger {
    entries: BTreeMap<String, ConstantEntry>,
}

impl ConstantLedger {
    pub fn insert(
        &mut self,
        name: &str,
        value: Interval,
        provenance: Provenance,
        derivation: impl Into<String>,
    ) {
        self.entries.insert(
            name.to_string(),
            ConstantEntry {
                value: Enclosure::of(&value),
                provenance,
                derivation: derivation.into(),
                interval: value,
            },
        );
    }

    /// Fetches a constant; aborting is the only alternative to a declared
    /// provenance.
    pub fn get(&self, name: &str) -> Result<&Interval> {
        self.entries
            .get(name)
            .map(|e| &e.interval)
            .ok_or_else(|| Error::MissingConstant(name.to_string()))
    }

    pub fn entry(&self, name: &str) -> Option<&ConstantEntry> {
        self.entries.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ConstantEntry)> {
        self.entries.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_constant_aborts() {
        let ledger = ConstantLedger::default();
        assert!(matches!(ledger.get("c1"), Err(Error::MissingConstant(_))));
    }

    #[test]
    fn insert_and_fetch() {
        let mut ledger = ConstantLedger::default();
        ledger.insert("c1", Interval::from_i64(9, 64), Provenance::CertifiedComputed, "grid");
        assert!(ledger.get("c1").is_ok());
        assert_eq!(ledger.entry("c1").unwrap().provenance, Provenance::CertifiedComputed);
    }
}
