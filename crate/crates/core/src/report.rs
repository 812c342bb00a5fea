//! Structured verdicts shared by every checker in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::qseries::Rational;

/// A `p`-adic valuation that may be infinite (the valued quantity is exactly zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(v) => v >= bound,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Equal,
            (Valuation::Infinite, _) => Greater,
            (_, Valuation::Infinite) => Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// `p`-adic valuation of a nonzero integer; `Infinite` for zero.
pub fn valuation_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    Valuation::Finite(v)
}

/// Valuation of numerator minus valuation of denominator.
pub fn valuation_rat(x: &Rational, p: u64) -> Valuation {
    match valuation_int(x.numer(), p) {
        Valuation::Infinite => Valuation::Infinite,
        Valuation::Finite(vn) => {
            let vd = valuation_int(x.denom(), p).finite().unwrap_or(0);
            Valuation::Finite(vn - vd)
        }
    }
}

/// What the checked quantities were compared against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Modulus {
    /// Congruence modulo `p^n`, judged by `p`-adic valuation.
    PrimePower { p: u64, n: u32 },
    /// Congruence modulo an integer.
    Integer {
        #[serde(with = "crate::report::decimal")]
        m: BigInt,
    },
    /// Exact equality.
    Exact,
    /// Real-valued comparison within a tolerance.
    Tolerance { tol: f64 },
}

/// One checked index (coefficient, exponent, parameter value).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub index: u64,
    pub valuation: Option<Valuation>,
    #[serde(with = "crate::report::decimal_opt", default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    pub ok: bool,
}

impl ReportEntry {
    pub fn valuation(index: u64, v: Valuation, ok: bool) -> Self {
        ReportEntry { index, valuation: Some(v), residue: None, value: None, ok }
    }

    pub fn residue(index: u64, r: BigInt, ok: bool) -> Self {
        ReportEntry { index, valuation: None, residue: Some(r), value: None, ok }
    }

    pub fn flag(index: u64, ok: bool) -> Self {
        ReportEntry { index, valuation: None, residue: None, value: None, ok }
    }
}

/// Verdict emitted by every checker.
///
/// `passed` is true iff every entry is `ok` (and, when present, the hypothesis held).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub check: String,
    pub modulus: Modulus,
    pub entries: Vec<ReportEntry>,
    pub min_valuation: Option<Valuation>,
    pub first_failure: Option<u64>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs_support: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CongruenceReport {
    pub fn new(check: impl Into<String>, modulus: Modulus, entries: Vec<ReportEntry>) -> Self {
        let first_failure = entries.iter().find(|e| !e.ok).map(|e| e.index);
        let min_valuation = entries.iter().filter_map(|e| e.valuation).min();
        CongruenceReport {
            check: check.into(),
            modulus,
            passed: first_failure.is_none(),
            entries,
            min_valuation,
            first_failure,
            hypothesis_holds: None,
            lhs_support: None,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_support(mut self, support: Vec<u64>) -> Self {
        self.lhs_support = Some(support);
        self
    }

    pub fn with_hypothesis(mut self, holds: bool) -> Self {
        self.hypothesis_holds = Some(holds);
        self.passed &= holds;
        self
    }

    /// Combine sub-reports into one verdict; entries are concatenated in order.
    pub fn merge(check: impl Into<String>, modulus: Modulus, parts: Vec<CongruenceReport>) -> Self {
        let mut entries = Vec::new();
        let mut notes = Vec::new();
        let mut passed = true;
        for part in parts {
            passed &= part.passed;
            entries.extend(part.entries);
            notes.extend(part.notes);
        }
        let mut merged = CongruenceReport::new(check, modulus, entries);
        merged.passed &= passed;
        merged.notes = notes;
        merged
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {verdict} ({} entries", self.check, self.entries.len())?;
        if let Some(v) = self.min_valuation {
            write!(f, ", min valuation {v}")?;
        }
        if let Some(i) = self.first_failure {
            write!(f, ", first failure at {i}")?;
        }
        f.write_str(")")
    }
}

pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod decimal_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => s.serialize_some(&n.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}
