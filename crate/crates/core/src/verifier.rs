//! Running identities: sum the series, evaluate the closed form, compare.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::ball::{bits_for_digits, Ball, Mag};
use crate::error::{Error, Result};
use crate::registry::{registry, IdentityEntry, OracleTerm, PaperEq, Status};
use crate::series::{sum_to_precision, TailKind, TailStrategy, TermStream, DEFAULT_MAX_TERMS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Working precision: digits plus guard bits, doubled on inconclusive runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub guard_bits: u32,
    pub retries: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            guard_bits: 64,
            retries: 3,
        }
    }
}

/// Digit targets by convergence class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitsPolicy {
    pub geometric: u32,
    /// `PSeries` with `p ≥ 3`.
    pub pseries_fast: u32,
    /// `PSeries` with `p < 3`.
    pub pseries_slow: u32,
    pub telescoped: u32,
    pub alternating: u32,
    /// Overrides every class when set.
    pub uniform: Option<u32>,
}

impl Default for DigitsPolicy {
    fn default() -> Self {
        DigitsPolicy {
            geometric: 30,
            pseries_fast: 8,
            pseries_slow: 6,
            telescoped: 15,
            alternating: 10,
            uniform: None,
        }
    }
}

impl DigitsPolicy {
    pub fn uniform(digits: u32) -> Self {
        DigitsPolicy {
            uniform: Some(digits),
            ..DigitsPolicy::default()
        }
    }

    pub fn digits_for(&self, entry: &IdentityEntry) -> u32 {
        if let Some(d) = self.uniform {
            return d;
        }
        match &entry.tail {
            TailStrategy::GeometricRatio { .. } => self.geometric,
            TailStrategy::PSeries { p_twice, .. } if *p_twice >= 6 => self.pseries_fast,
            TailStrategy::PSeries { .. } => self.pseries_slow,
            TailStrategy::Telescoped { .. } => self.telescoped,
            TailStrategy::Alternating { .. } => self.alternating,
        }
    }
}

fn ser_ball<S: Serializer>(b: &Option<Ball>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match b {
        Some(b) => s.serialize_str(&b.to_decimal()),
        None => s.serialize_none(),
    }
}

fn ser_kind<S: Serializer>(k: &TailKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(k.name())
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub paper_eq: PaperEq,
    pub status: Status,
    pub verdict: Verdict,
    /// `FAIL` for as-printed fixtures, `PASS` otherwise.
    pub expected: Verdict,
    pub requested_digits: u32,
    pub agreed_digits: i64,
    pub overlap: bool,
    #[serde(serialize_with = "ser_ball")]
    pub lhs: Option<Ball>,
    #[serde(serialize_with = "ser_ball")]
    pub rhs: Option<Ball>,
    pub terms_used: u64,
    #[serde(serialize_with = "ser_kind")]
    pub tail_strategy: TailKind,
    pub precision_bits: u32,
    pub attempts: u32,
    pub wall_time: f64,
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn as_expected(&self) -> bool {
        self.verdict == self.expected
    }

    /// Copy with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            wall_time: 0.0,
            ..self.clone()
        }
    }
}

/// PASS on overlap with enough agreement, FAIL on a gap of more than ten
/// times the combined radii.
pub fn classify(lhs: &Ball, rhs: &Ball, digits: u32) -> (Verdict, bool, i64) {
    let overlap = lhs.overlaps(rhs);
    let agreed = lhs.agreed_digits(rhs);
    if overlap && agreed >= i64::from(digits) {
        return (Verdict::Pass, overlap, agreed);
    }
    let gap = (lhs - rhs).mag_lower();
    let slack = lhs.rad().add_up(&rhs.rad()).mul_up(&Mag::from_u64(10));
    let verdict = if !overlap && gap > slack {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    (verdict, overlap, agreed)
}

/// Verifies a catalog entry by id.
pub fn verify(id: &str, digits: u32, max_terms: u64) -> Result<VerificationReport> {
    verify_entry(registry().get(id)?, digits, max_terms, PrecisionPolicy::default())
}

/// Verifies an entry; tail-hypothesis violations become inconclusive reports.
pub fn verify_entry(
    entry: &IdentityEntry,
    digits: u32,
    max_terms: u64,
    policy: PrecisionPolicy,
) -> Result<VerificationReport> {
    if digits == 0 {
        return Err(Error::usage("digits must be at least 1"));
    }
    let start = Instant::now();
    let mut prec = bits_for_digits(digits, policy.guard_bits);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut report = VerificationReport {
            id: entry.id.clone(),
            paper_eq: entry.paper_eq,
            status: entry.status,
            verdict: Verdict::Inconclusive,
            expected: if entry.status.expects_fail() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            requested_digits: digits,
            agreed_digits: 0,
            overlap: false,
            lhs: None,
            rhs: None,
            terms_used: 0,
            tail_strategy: entry.tail_kind(),
            precision_bits: prec,
            attempts,
            wall_time: 0.0,
            note: None,
        };
        let rhs = entry.rhs.eval(prec)?;
        report.rhs = Some(rhs.clone());
        match sum_to_precision(&entry.lhs, &entry.tail, digits, max_terms, prec) {
            Ok(outcome) => {
                if !outcome.reached() {
                    report.note = Some(format!("precision not reached within {max_terms} terms"));
                }
                let r = outcome.into_result();
                let (verdict, overlap, agreed) = classify(&r.value, &rhs, digits);
                report.verdict = verdict;
                report.overlap = overlap;
                report.agreed_digits = agreed;
                report.terms_used = r.terms_used;
                report.lhs = Some(r.value);
            }
            Err(e @ (Error::TailHypothesisViolation { .. } | Error::Resource(_))) => {
                report.note = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
        if report.verdict != Verdict::Inconclusive || attempts > policy.retries {
            report.wall_time = start.elapsed().as_secs_f64();
            return Ok(report);
        }
        prec = prec.saturating_mul(2);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedFail {
    pub id: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    /// Verdict counts per print status.
    pub by_status: BTreeMap<String, Counts>,
    /// As-printed fixtures and how they came out.
    pub expected_fail: Vec<ExpectedFail>,
    /// Ids whose verdict differs from the expectation.
    pub unexpected: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<VerificationReport>,
    pub summary: SuiteSummary,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub digits: DigitsPolicy,
    pub max_terms: u64,
    pub precision: PrecisionPolicy,
    /// Worker threads; 0 means available parallelism.
    pub workers: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            digits: DigitsPolicy::default(),
            max_terms: DEFAULT_MAX_TERMS,
            precision: PrecisionPolicy::default(),
            workers: 0,
        }
    }
}

fn report_or_error(entry: &IdentityEntry, opts: &SuiteOptions) -> VerificationReport {
    let digits = opts.digits.digits_for(entry);
    verify_entry(entry, digits, opts.max_terms, opts.precision).unwrap_or_else(|e| VerificationReport {
        id: entry.id.clone(),
        paper_eq: entry.paper_eq,
        status: entry.status,
        verdict: Verdict::Inconclusive,
        expected: if entry.status.expects_fail() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        requested_digits: digits,
        agreed_digits: 0,
        overlap: false,
        lhs: None,
        rhs: None,
        terms_used: 0,
        tail_strategy: entry.tail_kind(),
        precision_bits: 0,
        attempts: 0,
        wall_time: 0.0,
        note: Some(e.to_string()),
    })
}

/// Summary of a set of reports.
pub fn summarize(reports: &[VerificationReport]) -> SuiteSummary {
    let mut by_status: BTreeMap<String, Counts> = BTreeMap::new();
    let mut expected_fail = Vec::new();
    let mut unexpected = Vec::new();
    for r in reports {
        let c = by_status.entry(r.status.name().to_string()).or_default();
        match r.verdict {
            Verdict::Pass => c.pass += 1,
            Verdict::Fail => c.fail += 1,
            Verdict::Inconclusive => c.inconclusive += 1,
        }
        if r.expected == Verdict::Fail {
            expected_fail.push(ExpectedFail {
                id: r.id.clone(),
                verdict: r.verdict,
            });
        }
        if !r.as_expected() {
            unexpected.push(r.id.clone());
        }
    }
    SuiteSummary {
        total: reports.len(),
        by_status,
        expected_fail,
        ok: unexpected.is_empty(),
        unexpected,
    }
}

/// Verifies every catalog entry on a worker pool; report order follows the catalog.
pub fn verify_all(opts: &SuiteOptions) -> Result<SuiteReport> {
    verify_entries(registry().entries(), opts)
}

/// [`verify_all`] over a chosen set of entries.
pub fn verify_entries(entries: &[IdentityEntry], opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if opts.workers > 0 {
        builder = builder.num_threads(opts.workers);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Resource(format!("worker pool: {e}")))?;
    let reports: Vec<VerificationReport> =
        pool.install(|| entries.par_iter().map(|e| report_or_error(e, opts)).collect());
    let summary = summarize(&reports);
    Ok(SuiteReport { reports, summary })
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub stream: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub id: String,
    pub checked: u64,
    /// Whether every comparison was exact rather than by ball overlap.
    pub exact: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl OracleReport {
    pub fn matched(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Largest index accepted by [`oracle_crosscheck`].
pub const ORACLE_MAX_N: u64 = 50;

/// Compares recurrence-emitted terms with from-scratch values for `n ≤ max_n`.
pub fn oracle_crosscheck(id: &str, max_n: u64) -> Result<OracleReport> {
    oracle_check_entry(registry().get(id)?, max_n)
}

pub fn oracle_check_entry(entry: &IdentityEntry, max_n: u64) -> Result<OracleReport> {
    if max_n > ORACLE_MAX_N {
        return Err(Error::usage(format!(
            "oracle cross-check needs N <= {ORACLE_MAX_N}, got {max_n}"
        )));
    }
    let prec = 256;
    let mut stream = if entry.lhs.is_exact() {
        TermStream::with_exact(&entry.lhs, prec)?
    } else {
        TermStream::new(&entry.lhs, prec)?
    };
    let mut report = OracleReport {
        id: entry.id.clone(),
        checked: 0,
        exact: true,
        first_mismatch: None,
    };
    while stream.index() <= max_n {
        let t = stream.next_term()?;
        let expected = entry.oracle.term(t.index, prec);
        let (ok, shown) = match (&expected, &t.exact) {
            (OracleTerm::Exact(o), Some(s)) => (o == s, o.to_string()),
            (OracleTerm::Exact(o), None) => {
                report.exact = false;
                (t.value.overlaps(&Ball::from_surd(o, prec)), o.to_string())
            }
            (OracleTerm::Approx(b), _) => {
                report.exact = false;
                (t.value.overlaps(b), b.to_decimal())
            }
        };
        report.checked += 1;
        if !ok {
            report.first_mismatch = Some(Mismatch {
                n: t.index,
                stream: t.exact.map_or_else(|| t.value.to_decimal(), |e| e.to_string()),
                oracle: shown,
            });
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, SurdQ5};
    use crate::registry::{list_identities, Filter};

    #[test]
    fn eq34_passes_at_twenty_digits() {
        let r = verify("EQ34", 20, DEFAULT_MAX_TERMS).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.lhs.unwrap().to_decimal().starts_with("0.036815538"));
    }

    #[test]
    fn printed_eq37_fails() {
        let r = verify("EQ37_AS_PRINTED", 6, DEFAULT_MAX_TERMS).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.as_expected());
        assert!(r.rhs.unwrap().to_decimal().starts_with("2.7168"));
    }

    #[test]
    fn classification_rules() {
        let b = |p: i64, q: i64, e: i64| Ball::from_ratio(p, q, 64).add_error(Mag::pow2(e));
        assert_eq!(classify(&b(1, 3, -80), &b(1, 3, -80), 10).0, Verdict::Pass);
        // overlapping but too wide
        assert_eq!(classify(&b(1, 3, -10), &b(1, 3, -80), 10).0, Verdict::Inconclusive);
        // disjoint with a small gap
        let x = b(1, 1, -10);
        let y = Ball::from_rational(&(ratio(1, 1) + ratio(3, 1024)), 64).add_error(Mag::pow2(-10));
        assert_eq!(classify(&x, &y, 3).0, Verdict::Inconclusive);
        assert_eq!(classify(&b(1, 1, -10), &b(2, 1, -10), 3).0, Verdict::Fail);
    }

    #[test]
    fn digits_policy_by_class() {
        let p = DigitsPolicy::default();
        let d = |id: &str| p.digits_for(registry().get(id).unwrap());
        assert_eq!(d("EQ11"), 30);
        assert_eq!(d("THM26"), 8);
        assert_eq!(d("THM27"), 6);
        assert_eq!(d("EQ36"), 15);
        assert_eq!(
            DigitsPolicy::uniform(12).digits_for(registry().get("THM27").unwrap()),
            12
        );
    }

    #[test]
    fn every_stream_matches_its_oracle() {
        for e in registry().entries() {
            let r = oracle_check_entry(e, ORACLE_MAX_N).unwrap();
            assert!(r.matched(), "{}: {:?}", e.id, r.first_mismatch);
            assert_eq!(r.checked, ORACLE_MAX_N);
            assert_eq!(r.exact, e.id != "THM24", "{}", e.id);
        }
        assert!(oracle_crosscheck("EQ39", 51).is_err());
    }

    #[test]
    fn eq39_first_term_is_one_eighth() {
        let e = registry().get("EQ39").unwrap();
        let mut s = TermStream::with_exact(&e.lhs, 64).unwrap();
        assert_eq!(
            s.next_term().unwrap().exact.unwrap(),
            SurdQ5::from_rational(ratio(1, 8))
        );
    }

    #[test]
    fn eq35_is_termwise_negated_eq34() {
        let a = registry().get("EQ34").unwrap();
        let b = registry().get("EQ35").unwrap();
        let mut sa = TermStream::with_exact(&a.lhs, 64).unwrap();
        let mut sb = TermStream::with_exact(&b.lhs, 64).unwrap();
        for _ in 0..50 {
            let x = sa.next_term().unwrap().exact.unwrap();
            let y = sb.next_term().unwrap().exact.unwrap();
            assert_eq!(x, -&y);
        }
    }

    #[test]
    fn summary_counts_fixtures_separately() {
        let fixtures = list_identities(&Filter {
            status: Some(Status::AsPrintedDiscrepant),
            ..Filter::default()
        });
        let entries: Vec<IdentityEntry> = fixtures.into_iter().cloned().collect();
        let opts = SuiteOptions {
            digits: DigitsPolicy::uniform(8),
            ..SuiteOptions::default()
        };
        let suite = verify_entries(&entries, &opts).unwrap();
        assert!(suite.summary.ok, "{:?}", suite.summary);
        assert_eq!(suite.summary.expected_fail.len(), 3);
        assert_eq!(suite.summary.by_status["AS_PRINTED_DISCREPANT"].fail, 3);
    }
}
