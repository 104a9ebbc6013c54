//! Plain-text key/value reports.
//!
//! A report is one `key = value` pair per line, the first line naming the
//! report kind:
//!
//! ```text
//! report = bound
//! theorem = weight
//! bound = 66
//! exhaustive = true
//! ```
//!
//! Keys are lowercase identifiers and appear in a fixed order for each kind,
//! so identical results serialize to identical bytes.

use std::fmt;

use crate::bounds::BoundReport;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    kind: String,
    fields: Vec<(String, String)>,
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

impl Report {
    /// # Panics
    /// If `kind` is not a valid key.
    pub fn new(kind: &str) -> Self {
        assert!(valid_key(kind), "invalid report kind {kind:?}");
        Report {
            kind: kind.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    /// Appends a field. Newlines in `value` are replaced by spaces.
    ///
    /// # Panics
    /// If `key` is not a valid key or is already present.
    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        assert!(valid_key(key) && key != "report", "invalid key {key:?}");
        assert!(self.get(key).is_none(), "duplicate key {key:?}");
        let value = value.to_string().replace(['\n', '\r'], " ");
        self.fields
            .push((key.to_string(), value.trim().to_string()));
        self
    }

    /// Appends every field of `other`, ignoring its kind.
    ///
    /// # Panics
    /// If a key of `other` is already present.
    pub fn append(&mut self, other: Report) -> &mut Self {
        for (k, v) in other.fields {
            assert!(self.get(&k).is_none(), "duplicate key {k:?}");
            self.fields.push((k, v));
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> impl Iterator<Item = (&str, &str)> {
        self.fields.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Reads a report back; rejects malformed lines, bad keys and duplicates.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let split = |no: usize, line: &str| -> Result<(String, String)> {
            let (k, v) = line
                .split_once(" = ")
                .or_else(|| line.strip_suffix(" =").map(|k| (k, "")))
                .ok_or_else(|| Error::parse(no + 1, "expected `key = value`"))?;
            if !valid_key(k) {
                return Err(Error::parse(no + 1, format!("invalid key {k:?}")));
            }
            Ok((k.to_string(), v.to_string()))
        };
        let (no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty report"))?;
        let (k, kind) = split(no, first)?;
        if k != "report" || !valid_key(&kind) {
            return Err(Error::parse(no + 1, "first line must be `report = <kind>`"));
        }
        let mut report = Report::new(&kind);
        for (no, line) in lines {
            let (k, v) = split(no, line)?;
            if k == "report" || report.get(&k).is_some() {
                return Err(Error::parse(no + 1, format!("duplicate key {k:?}")));
            }
            report.fields.push((k, v));
        }
        Ok(report)
    }

    /// The fields of a bound search, in a fixed order.
    pub fn from_bound(r: &BoundReport) -> Self {
        let mut out = Report::new("bound");
        let terms = |punctured: bool| {
            let parts: Vec<String> = r
                .terms
                .iter()
                .filter(|t| t.punctured == punctured)
                .map(|t| format!("{}:{}", t.column, t.value))
                .collect();
            if parts.is_empty() {
                "-".to_string()
            } else {
                parts.join(",")
            }
        };
        out.push("theorem", r.theorem)
            .push("bound", r.bound)
            .push("puncture", &r.puncture)
            .push(
                "witness_s",
                r.witness_s
                    .as_ref()
                    .map_or("-".to_string(), |s| s.to_string()),
            )
            .push("witness_t", &r.witness_t)
            .push("terms", terms(false))
            .push("punctured_terms", terms(true))
            .push("terms_sum", r.terms_sum())
            .push("subsets_examined", r.subsets_examined)
            .push("subsets_total", r.subsets_total)
            .push("exhaustive", r.exhaustive)
            .push("order", r.order.name());
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report = {}", self.kind)?;
        for (k, v) in &self.fields {
            if v.is_empty() {
                writeln!(f, "{k} =")?;
            } else {
                writeln!(f, "{k} = {v}")?;
            }
        }
        Ok(())
    }
}
