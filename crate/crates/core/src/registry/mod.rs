//! Catalog of the identities: series side, closed form, tail hypothesis and
//! print status.

mod entries;
mod family;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::exact::SurdQ5;
use crate::expr::ClosedForm;
use crate::series::{TailKind, TailStrategy, TermSpec};

pub use family::{family_alias, hand_transcribed, instantiate_family, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    AsPrintedOk,
    /// Displayed closed form contradicts its series; paired with a corrected entry.
    AsPrintedDiscrepant,
    Corrected,
    /// Restated known result.
    PriorWork,
}

impl Status {
    pub const ALL: [Status; 4] = [
        Status::AsPrintedOk,
        Status::AsPrintedDiscrepant,
        Status::Corrected,
        Status::PriorWork,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Status::AsPrintedOk => "AS_PRINTED_OK",
            Status::AsPrintedDiscrepant => "AS_PRINTED_DISCREPANT",
            Status::Corrected => "CORRECTED",
            Status::PriorWork => "PRIOR_WORK",
        }
    }

    /// Whether a clean run should refute this entry.
    pub fn expects_fail(self) -> bool {
        self == Status::AsPrintedDiscrepant
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Status::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::usage(format!("unknown status `{s}`")))
    }
}

/// Equation number or theorem the entry transcribes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PaperEq {
    Eq(u32),
    Thm24,
    Thm25a,
    Thm25b,
    Thm26,
    Thm27,
}

impl PaperEq {
    /// Position in reading order.
    pub fn order(self) -> u32 {
        match self {
            PaperEq::Eq(n) => n * 10,
            PaperEq::Thm24 => 239,
            PaperEq::Thm25a => 241,
            PaperEq::Thm25b => 242,
            PaperEq::Thm26 => 279,
            PaperEq::Thm27 => 299,
        }
    }

    /// Every equation and theorem that the catalog must cover.
    pub fn all() -> Vec<PaperEq> {
        let mut v: Vec<PaperEq> = (1..=40).map(PaperEq::Eq).collect();
        v.extend([
            PaperEq::Thm24,
            PaperEq::Thm25a,
            PaperEq::Thm25b,
            PaperEq::Thm26,
            PaperEq::Thm27,
        ]);
        v
    }
}

impl fmt::Display for PaperEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaperEq::Eq(n) => write!(f, "({n})"),
            PaperEq::Thm24 => f.write_str("Thm 2.4"),
            PaperEq::Thm25a => f.write_str("Thm 2.5a"),
            PaperEq::Thm25b => f.write_str("Thm 2.5b"),
            PaperEq::Thm26 => f.write_str("Thm 2.6"),
            PaperEq::Thm27 => f.write_str("Thm 2.7"),
        }
    }
}

impl Serialize for PaperEq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Family membership of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyRef {
    pub family: Family,
    pub r: i64,
}

/// A series term computed from scratch, without recurrences.
#[derive(Clone, Debug)]
pub enum OracleTerm {
    Exact(SurdQ5),
    /// For terms with a transcendental factor.
    Approx(Ball),
}

/// Independent term formula `n ↦ t_n` at working precision.
#[derive(Clone)]
pub struct Oracle(Arc<dyn Fn(u64, u32) -> OracleTerm + Send + Sync>);

impl Oracle {
    pub fn new(f: impl Fn(u64, u32) -> OracleTerm + Send + Sync + 'static) -> Self {
        Oracle(Arc::new(f))
    }

    pub fn exact(f: impl Fn(u64) -> SurdQ5 + Send + Sync + 'static) -> Self {
        Oracle::new(move |n, _| OracleTerm::Exact(f(n)))
    }

    pub fn term(&self, n: u64, prec: u32) -> OracleTerm {
        (self.0)(n, prec)
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Oracle")
    }
}

#[derive(Clone, Debug)]
pub struct IdentityEntry {
    pub id: String,
    pub paper_eq: PaperEq,
    pub lhs: TermSpec,
    /// Human-readable series side.
    pub lhs_text: String,
    pub rhs: ClosedForm,
    pub tail: TailStrategy,
    pub status: Status,
    pub family: Option<FamilyRef>,
    pub domain: String,
    pub notes: String,
    /// Partner id for as-printed/corrected pairs.
    pub pair: Option<String>,
    pub oracle: Oracle,
}

impl IdentityEntry {
    pub fn tail_kind(&self) -> TailKind {
        self.tail.kind()
    }

    pub fn catalog_record(&self) -> CatalogRecord {
        CatalogRecord {
            id: self.id.clone(),
            paper_eq: self.paper_eq,
            status: self.status,
            family: self.family,
            domain: self.domain.clone(),
            tail_kind: self.tail.kind().name(),
            tail: self.tail.to_string(),
            lhs: self.lhs_text.clone(),
            rhs: self.rhs.to_string(),
            pair: self.pair.clone(),
            notes: self.notes.clone(),
        }
    }
}

/// JSON catalog line of one entry.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogRecord {
    pub id: String,
    pub paper_eq: PaperEq,
    pub status: Status,
    pub family: Option<FamilyRef>,
    pub domain: String,
    pub tail_kind: &'static str,
    pub tail: String,
    pub lhs: String,
    pub rhs: String,
    pub pair: Option<String>,
    pub notes: String,
}

/// Selection for [`list_identities`].
#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub status: Option<Status>,
    pub family: Option<Family>,
}

pub struct Registry {
    entries: Vec<IdentityEntry>,
}

impl Registry {
    fn build() -> Self {
        let mut entries = entries::all();
        entries.sort_by(|a, b| (a.paper_eq.order(), &a.id).cmp(&(b.paper_eq.order(), &b.id)));
        Registry { entries }
    }

    pub fn entries(&self) -> &[IdentityEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Result<&IdentityEntry> {
        self.entries
            .iter()
            .find(|e| e.id.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }
}

/// The process-wide catalog, built on first use.
pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Registry::build)
}

/// Entries matching `filter`, ordered by equation number then id.
pub fn list_identities(filter: &Filter) -> Vec<&'static IdentityEntry> {
    registry()
        .entries()
        .iter()
        .filter(|e| filter.status.is_none_or(|s| e.status == s))
        .filter(|e| filter.family.is_none_or(|f| e.family.is_some_and(|r| r.family == f)))
        .collect()
}

/// Enclosure of a closed form.
pub fn closed_form_eval(expr: &ClosedForm, prec: u32) -> Result<Ball> {
    expr.eval(prec)
}

#[cfg(test)]
mod tests;
