//! Bound certificates and their serialised form.
//!
//! A [`BoundCertificate`] holds enclosures; [`CertificateRecord`] is its
//! printable image with every interval written as outward-rounded decimal
//! endpoints. The record has a fixed field order, so serialising a parsed
//! record reproduces the original bytes.

use std::fmt::Write as _;

use indexmap::IndexMap;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::algebraic::rational_to_decimal;
use crate::laurent::{LaurentParams, VerificationReport};
use crate::numerics::{IntervalReal, Precision, Status};

pub const SCHEMA: &str = "v1";

/// Which argument produced the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundPath {
    Main,
    Liouville,
    Optimizer,
}

/// One certified comparison.
#[derive(Clone, Debug)]
pub struct CheckEntry {
    pub status: Status,
    pub margin: IntervalReal,
    pub detail: String,
    /// Set when a stated inequality of the published chain does not hold.
    pub discrepancy: bool,
}

impl CheckEntry {
    pub fn new(status: Status, margin: IntervalReal, detail: impl Into<String>) -> Self {
        CheckEntry { status, margin, detail: detail.into(), discrepancy: false }
    }
}

#[derive(Clone, Debug)]
pub enum MetaValue {
    Interval(IntervalReal),
    Text(String),
}

#[derive(Clone, Debug)]
pub struct BoundCertificate {
    /// The inequality being certified, in words.
    pub statement: String,
    /// `Verified` exactly when `bound` is present.
    pub status: Status,
    /// Enclosure of the right-hand side; `log|Λ| > bound.lo()` is the safe
    /// numeric reading.
    pub bound: Option<IntervalReal>,
    pub a: IntervalReal,
    pub h: IntervalReal,
    pub d: Rational,
    pub b1: Integer,
    pub b2: Integer,
    pub gcd: Integer,
    pub path: BoundPath,
    pub params: Option<LaurentParams>,
    pub checks: IndexMap<String, CheckEntry>,
    pub replay: IndexMap<String, CheckEntry>,
    pub metadata: IndexMap<String, MetaValue>,
    pub assumption_trail: Vec<String>,
    pub precision: Precision,
}

impl BoundCertificate {
    pub fn is_certified(&self) -> bool {
        self.status.is_verified() && self.bound.is_some()
    }

    pub fn add_engine_report(&mut self, report: &VerificationReport) {
        for c in &report.conditions {
            self.checks.insert(c.name.to_string(), CheckEntry::new(c.status, c.margin.clone(), c.detail.clone()));
        }
    }

    /// Appends trail entries not already present.
    pub fn note_all(&mut self, entries: impl IntoIterator<Item = String>) {
        for e in entries {
            if !self.assumption_trail.contains(&e) {
                self.assumption_trail.push(e);
            }
        }
    }

    /// Names of checks (engine and replay) that did not verify.
    pub fn unverified(&self) -> Vec<String> {
        self.checks
            .iter()
            .chain(self.replay.iter())
            .filter(|(_, c)| !c.status.is_verified())
            .map(|(n, c)| format!("{n}: {}", c.status))
            .collect()
    }

    pub fn to_record(&self, digits: usize) -> CertificateRecord {
        let iv = |x: &IntervalReal| IntervalRecord::new(x, digits);
        let checks = |m: &IndexMap<String, CheckEntry>| m.iter().map(|(k, c)| (k.clone(), CheckRecord::new(c, digits))).collect();
        CertificateRecord {
            schema: SCHEMA.to_string(),
            statement: self.statement.clone(),
            status: self.status,
            bound: self.bound.as_ref().map(iv),
            a: iv(&self.a),
            h: iv(&self.h),
            d: rational_to_decimal(&self.d),
            b1: self.b1.to_string(),
            b2: self.b2.to_string(),
            gcd: self.gcd.to_string(),
            path: self.path,
            params: self.params.as_ref().map(ParamsRecord::from),
            checks: checks(&self.checks),
            replay: checks(&self.replay),
            metadata: self
                .metadata
                .iter()
                .map(|(k, v)| {
                    let r = match v {
                        MetaValue::Interval(x) => MetaRecord::Interval(iv(x)),
                        MetaValue::Text(t) => MetaRecord::Text(t.clone()),
                    };
                    (k.clone(), r)
                })
                .collect(),
            assumption_trail: self.assumption_trail.clone(),
            precision_bits: self.precision.bits(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lo: String,
    pub hi: String,
}

impl IntervalRecord {
    pub fn new(x: &IntervalReal, digits: usize) -> Self {
        let (lo, hi) = x.endpoints_decimal(digits);
        IntervalRecord { lo, hi }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub status: Status,
    pub margin_lo: String,
    pub margin_hi: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub discrepancy: bool,
}

impl CheckRecord {
    pub fn new(c: &CheckEntry, digits: usize) -> Self {
        let (margin_lo, margin_hi) = c.margin.endpoints_decimal(digits);
        CheckRecord { status: c.status, margin_lo, margin_hi, detail: c.detail.clone(), discrepancy: c.discrepancy }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct ParamsRecord {
    pub k: u64,
    pub l: u64,
    pub r1: u64,
    pub r2: u64,
    pub s1: u64,
    pub s2: u64,
    #[serde(rename = "rho")]
    pub rho: String,
    #[serde(rename = "mu")]
    pub mu: String,
}

impl From<&LaurentParams> for ParamsRecord {
    fn from(p: &LaurentParams) -> Self {
        ParamsRecord {
            k: p.k,
            l: p.l,
            r1: p.r1,
            r2: p.r2,
            s1: p.s1,
            s2: p.s2,
            rho: rational_to_decimal(&p.rho),
            mu: rational_to_decimal(&p.mu),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetaRecord {
    Interval(IntervalRecord),
    Text(String),
}

/// Serialisable image of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub schema: String,
    pub statement: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<IntervalRecord>,
    pub a: IntervalRecord,
    pub h: IntervalRecord,
    #[serde(rename = "D")]
    pub d: String,
    pub b1: String,
    pub b2: String,
    pub gcd: String,
    pub path: BoundPath,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsRecord>,
    pub checks: IndexMap<String, CheckRecord>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub replay: IndexMap<String, CheckRecord>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub metadata: IndexMap<String, MetaRecord>,
    pub assumption_trail: Vec<String>,
    pub precision_bits: u32,
}

impl CertificateRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record is always serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Plain-text rendering with the same strings as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let iv = |r: &IntervalRecord| format!("[{}, {}]", r.lo, r.hi);
        let _ = writeln!(out, "schema: {}", self.schema);
        let _ = writeln!(out, "statement: {}", self.statement);
        let _ = writeln!(out, "status: {}", self.status);
        if let Some(b) = &self.bound {
            let _ = writeln!(out, "bound: {}", iv(b));
        }
        let _ = writeln!(out, "a: {}", iv(&self.a));
        let _ = writeln!(out, "h: {}", iv(&self.h));
        let _ = writeln!(out, "D: {}", self.d);
        let _ = writeln!(out, "b1: {}", self.b1);
        let _ = writeln!(out, "b2: {}", self.b2);
        let _ = writeln!(out, "gcd: {}", self.gcd);
        let _ = writeln!(out, "path: {}", serde_json::to_value(self.path).unwrap().as_str().unwrap());
        if let Some(p) = &self.params {
            let _ = writeln!(
                out,
                "params: K={} L={} R1={} R2={} S1={} S2={} rho={} mu={}",
                p.k, p.l, p.r1, p.r2, p.s1, p.s2, p.rho, p.mu
            );
        }
        write_checks(&mut out, "checks", &self.checks);
        write_checks(&mut out, "replay", &self.replay);
        if !self.metadata.is_empty() {
            let _ = writeln!(out, "metadata:");
            for (k, v) in &self.metadata {
                let s = match v {
                    MetaRecord::Interval(r) => iv(r),
                    MetaRecord::Text(t) => t.clone(),
                };
                let _ = writeln!(out, "  {k}: {s}");
            }
        }
        let _ = writeln!(out, "assumption_trail:");
        for t in &self.assumption_trail {
            let _ = writeln!(out, "  - {t}");
        }
        let _ = writeln!(out, "precision_bits: {}", self.precision_bits);
        out
    }
}

pub fn write_checks(out: &mut String, title: &str, checks: &IndexMap<String, CheckRecord>) {
    if checks.is_empty() {
        return;
    }
    let _ = writeln!(out, "{title}:");
    for (name, c) in checks {
        let flag = if c.discrepancy { " [paper-chain-discrepancy]" } else { "" };
        let _ = write!(out, "  {name}: {} margin [{}, {}]{flag}", c.status, c.margin_lo, c.margin_hi);
        if !c.detail.is_empty() {
            let _ = write!(out, " ({})", c.detail);
        }
        out.push('\n');
    }
}
