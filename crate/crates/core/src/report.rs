//! Shared report types: certified inequality entries with per-side
//! enclosures and a three-valued status.

use serde::Serialize;

use crate::numerics::Interval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Undetermined,
}

/// Decimal rendering of an enclosure, outward-rounded.
#[derive(Clone, Debug, Serialize)]
pub struct Enclosure {
    pub lo: String,
    pub hi: String,
}

impl Enclosure {
    pub fn of(iv: &Interval) -> Self {
        let (lo, hi) = iv.to_decimal_strings(17);
        Enclosure { lo, hi }
    }

    pub fn exact(s: impl Into<String>) -> Self {
        let s = s.into();
        Enclosure { lo: s.clone(), hi: s }
    }
}

/// One evaluated inequality `lhs <= rhs` (unless the id says otherwise).
#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub id: String,
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Ordered list of evaluated inequalities.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn push(&mut self, entry: BoundEntry) {
        self.entries.push(entry);
    }

    pub fn push_le(&mut self, id: &str, lhs: &Interval, rhs: &Interval, note: Option<String>) {
        self.entries.push(BoundEntry {
            id: id.to_string(),
            lhs: Enclosure::of(lhs),
            rhs: Enclosure::of(rhs),
            status: compare_le(lhs, rhs),
            note,
        });
    }

    pub fn get(&self, id: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn all_determinate(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Undetermined)
    }

    pub fn any_failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fails)
    }

    pub fn extend(&mut self, other: BoundReport) {
        self.entries.extend(other.entries);
    }
}

/// Certified status of `lhs <= rhs`; `Undetermined` only when the
/// enclosures overlap.
pub fn compare_le(lhs: &Interval, rhs: &Interval) -> Status {
    if lhs.certainly_le(rhs) {
        Status::Holds
    } else if lhs.lo() > rhs.hi() {
        Status::Fails
    } else {
        Status::Undetermined
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_statuses() {
        let one = Interval::from_i64(1, 64);
        let two = Interval::from_i64(2, 64);
        assert_eq!(compare_le(&one, &two), Status::Holds);
        assert_eq!(compare_le(&two, &one), Status::Fails);
        assert_eq!(compare_le(&one, &one), Status::Holds); // touching point intervals
        let wide = Interval::new(
            rug::Float::with_val(64, 0.5f64),
            rug::Float::with_val(64, 1.5f64),
        );
        assert_eq!(compare_le(&wide, &one), Status::Undetermined);
    }
}
