//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use binharm_core::ball::{bits_for_digits, Ball, ConstantName};
use binharm_core::exact::{check_binet_identity, BigInt, BigRational, BinetIdentity, SurdQ5};
use binharm_core::expr::{catalan, cst, int, ln, ln2, pi, powi, rat, sqrt, ClosedForm};
use binharm_core::genfunc::{gf_eval_exact, gf_series_sum, GfName};
use binharm_core::registry::{instantiate_family, registry, Family, IdentityEntry};
use binharm_core::series::{empirical_tail_check, partial_sum_exact, TermStream, DEFAULT_MAX_TERMS};
use binharm_core::verifier::{verify_all, verify_entry, PrecisionPolicy, SuiteOptions, Verdict, VerificationReport};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn entry(id: &str) -> &'static IdentityEntry {
    registry().get(id).expect("registered id")
}

fn run(e: &IdentityEntry, digits: u32, max_terms: u64) -> Result<VerificationReport, String> {
    verify_entry(e, digits, max_terms, PrecisionPolicy::default()).map_err(|err| format!("{}: {err}", e.id))
}

fn expect(e: &IdentityEntry, digits: u32, max_terms: u64, verdict: Verdict) -> Result<VerificationReport, String> {
    let r = run(e, digits, max_terms)?;
    ensure(r.verdict == verdict, || {
        format!(
            "{} gave {} with {} agreed digits",
            r.id,
            r.verdict.name(),
            r.agreed_digits
        )
    })?;
    Ok(r)
}

/// The registered closed form encloses an independently written expression.
fn same_value(e: &IdentityEntry, independent: &ClosedForm, digits: u32) -> Result<(), String> {
    let prec = bits_for_digits(digits, 64);
    let a = e.rhs.eval(prec).map_err(|x| x.to_string())?;
    let b = independent.eval(prec).map_err(|x| x.to_string())?;
    ensure(a.overlaps(&b) && a.agreed_digits(&b) >= i64::from(digits), || {
        format!(
            "{} closed form {} differs from {}",
            e.id,
            a.to_decimal_sig(20),
            b.to_decimal_sig(20)
        )
    })
}

fn within(t: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(t.as_secs_f64() < limit, || {
        format!("{what} took {:.2} s (limit {limit} s)", t.as_secs_f64())
    })
}

fn binet() -> Check {
    let t = Instant::now();
    let mut checked = 0;
    for id in BinetIdentity::ALL {
        for m in -50..=50 {
            for n in -50..=50 {
                ensure(check_binet_identity(id, m, n), || {
                    format!("{id} fails at m = {m}, n = {n}")
                })?;
                checked += 1;
            }
        }
    }
    within(t.elapsed(), 5.0, "Binet suite")?;
    Ok(format!("{checked} exact checks in {:.2} s", t.elapsed().as_secs_f64()))
}

fn gf_overlap() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut names = vec![
        GfName::M,
        GfName::Hd,
        GfName::H2n,
        GfName::CatHd,
        GfName::CatH2n,
        GfName::CatHalf,
    ];
    names.extend((0..=5).map(GfName::Shifted));
    let mut worst = i64::MAX;
    for &name in &names {
        for _ in 0..5 {
            let den = rng.gen_range(11..400i64);
            let mut num = rng.gen_range(-(den - 1) / 4..=(den - 1) / 4);
            if num == 0 {
                num = 1;
            }
            let x = SurdQ5::from_rational(BigRational::new(num.into(), den.into()));
            let lhs = gf_series_sum(name, &x, 22, DEFAULT_MAX_TERMS, 160).map_err(|e| e.to_string())?;
            let rhs = gf_eval_exact(name, &x, 160).map_err(|e| e.to_string())?;
            let agreed = lhs.agreed_digits(&rhs);
            ensure(lhs.overlaps(&rhs) && agreed >= 20, || {
                format!("{name} at {num}/{den}: {agreed} digits")
            })?;
            worst = worst.min(agreed);
        }
    }
    within(t.elapsed(), 60.0, "generating-function overlap")?;
    Ok(format!("{} points, min {worst} agreed digits", names.len() * 5))
}

fn families() -> Check {
    let mut entries: Vec<IdentityEntry> = ["EQ6", "EQ7", "EQ8", "EQ11", "EQ12", "EQ13"]
        .iter()
        .chain(&["EQ18", "EQ19", "EQ20", "EQ21", "EQ22", "EQ23"])
        .map(|id| entry(id).clone())
        .collect();
    for f in Family::ALL {
        for r in 1..=10 {
            entries.push(instantiate_family(f, r).map_err(|e| e.to_string())?);
        }
    }
    let mut slowest: f64 = 0.0;
    for e in &entries {
        let t = Instant::now();
        expect(e, 30, DEFAULT_MAX_TERMS, Verdict::Pass)?;
        within(t.elapsed(), 5.0, &e.id)?;
        slowest = slowest.max(t.elapsed().as_secs_f64());
    }
    Ok(format!(
        "{} identities at 30 digits, slowest {slowest:.3} s",
        entries.len()
    ))
}

fn prior_results() -> Check {
    let g = catalan;
    let forms = [
        ("EQ1", pi() * ln2() - int(2) * g()),
        (
            "EQ2",
            int(2) + int(2) * ln2() + powi(ln2(), 2) + int(4) * g() - pi() * (int(1) + int(2) * ln2()),
        ),
        ("EQ3", int(2) + int(4) * ln2() - int(4) * g() - pi() + pi() * ln2()),
    ];
    for (id, form) in &forms {
        same_value(entry(id), form, 40)?;
        expect(entry(id), 15, DEFAULT_MAX_TERMS, Verdict::Pass)?;
    }
    Ok("EQ1-EQ3 PASS at 15 digits".into())
}

fn theorem_24() -> Check {
    let e = entry("THM24");
    let form = int(2) * ln2()
        + rat(7, 8) * cst(ConstantName::Zeta3)
        + pi() / int(12) * (int(-12) + pi() * (int(-1) + ln(int(8))));
    same_value(e, &form, 40)?;
    let r = expect(e, 8, 100_000, Verdict::Pass)?;
    Ok(format!("{} agreed digits with {} terms", r.agreed_digits, r.terms_used))
}

fn theorem_25() -> Check {
    same_value(entry("THM25A"), &(int(16) / pi() * ClosedForm::Psi), 40)?;
    same_value(entry("THM25B"), &(int(2) / pi() * ClosedForm::PsiStar), 40)?;
    let a = expect(entry("THM25A"), 6, DEFAULT_MAX_TERMS, Verdict::Pass)?;
    let b = expect(entry("THM25B"), 6, DEFAULT_MAX_TERMS, Verdict::Pass)?;
    Ok(format!(
        "series A {} terms, series B {} terms",
        a.terms_used, b.terms_used
    ))
}

fn theorem_26() -> Check {
    let e = entry("THM26");
    same_value(e, &(powi(pi(), 2) / int(6)), 40)?;
    let r = expect(e, 8, 10_000, Verdict::Pass)?;
    let s5 = partial_sum_exact(&e.lhs, 5).map_err(|x| x.to_string())?;
    ensure(s5.is_rational(), || "five-term sum is not rational".into())?;
    let q = s5.rational_part().clone();
    // five terms summed in exact rationals outside this crate; ≈ 1.6407553381
    let oracle = BigRational::new(BigInt::from(9_987_533_824u64), BigInt::from(6_087_156_075u64));
    ensure(q == oracle, || format!("five-term sum {q} differs from {oracle}"))?;
    Ok(format!(
        "{} terms; S_5 = {q} = {}",
        r.terms_used,
        Ball::from_rational(&q, 64).to_decimal_sig(11)
    ))
}

fn theorem_27() -> Check {
    let e = entry("THM27");
    same_value(e, &(catalan() / (int(4) * pi()) + int(1) / (int(8) * pi())), 40)?;
    let t = Instant::now();
    let r = expect(e, 6, DEFAULT_MAX_TERMS, Verdict::Pass)?;
    within(t.elapsed(), 600.0, "THM27")?;
    Ok(format!("{} terms in {:.2} s", r.terms_used, t.elapsed().as_secs_f64()))
}

fn deluxe() -> Check {
    same_value(entry("EQ34"), &(int(3) * pi() / int(256)), 40)?;
    same_value(entry("EQ36"), &(int(3) * pi() / int(32)), 40)?;
    for id in ["EQ31", "EQ32", "EQ33", "EQ34", "EQ35", "EQ36", "EQ39", "EQ40"] {
        expect(entry(id), 15, DEFAULT_MAX_TERMS, Verdict::Pass)?;
    }
    let mut a = TermStream::with_exact(&entry("EQ34").lhs, 64).map_err(|e| e.to_string())?;
    let mut b = TermStream::with_exact(&entry("EQ35").lhs, 64).map_err(|e| e.to_string())?;
    for _ in 0..500 {
        let (x, y) = (
            a.next_term().map_err(|e| e.to_string())?,
            b.next_term().map_err(|e| e.to_string())?,
        );
        let (x, y) = (x.exact.expect("exact term"), y.exact.expect("exact term"));
        ensure(x == -y, || "EQ35 term is not the negated EQ34 term".into())?;
    }
    Ok("8 series at 15 digits; EQ35 = −EQ34 termwise for 500 terms".into())
}

/// `−ln((1 − s)/2)/s` with `s = √(1 − 4x)`, the EQ17_AS_PRINTED closed form.
fn eq17_as_printed(x: &BigRational) -> ClosedForm {
    let s = sqrt(int(1) - int(4) * ClosedForm::Rational(x.clone()));
    int(-1) / s.clone() * ln((int(1) - s) / int(2))
}

fn fixtures() -> Check {
    for id in ["EQ37_AS_PRINTED", "EQ38_AS_PRINTED", "EQ17_AS_PRINTED"] {
        expect(entry(id), 15, DEFAULT_MAX_TERMS, Verdict::Fail)?;
    }
    for id in ["EQ37", "EQ38", "EQ17"] {
        expect(entry(id), 15, DEFAULT_MAX_TERMS, Verdict::Pass)?;
    }
    let prec = bits_for_digits(15, 64);
    for k in 1..25 {
        let x = BigRational::new(BigInt::from(k), BigInt::from(100));
        let series = gf_series_sum(
            GfName::Hd,
            &SurdQ5::from_rational(x.clone()),
            15,
            DEFAULT_MAX_TERMS,
            prec,
        )
        .map_err(|e| e.to_string())?;
        let printed: Ball = eq17_as_printed(&x).eval(prec).map_err(|e| e.to_string())?;
        ensure(!series.overlaps(&printed), || {
            format!("EQ17_AS_PRINTED agrees with the series at x = {x}")
        })?;
    }
    Ok("EQ17/37/38_AS_PRINTED FAIL; corrected PASS; EQ17_AS_PRINTED fails at x = k/100, k < 25".into())
}

fn determinism() -> Check {
    let run = |workers| -> Result<Vec<String>, String> {
        let suite = verify_all(&SuiteOptions {
            workers,
            ..SuiteOptions::default()
        })
        .map_err(|e| e.to_string())?;
        Ok(suite
            .reports
            .iter()
            .map(|r| serde_json::to_string(&r.without_timing()).expect("report serializes"))
            .collect())
    };
    let (one, eight) = (run(1)?, run(8)?);
    ensure(one == eight, || "reports differ between 1 and 8 workers".into())?;
    Ok(format!("{} identical reports", one.len()))
}

fn tail_soundness() -> Check {
    let probes = [32, 128, 512];
    for e in registry().entries() {
        let report = empirical_tail_check(&e.lhs, &e.tail, &probes, 192).map_err(|x| format!("{}: {x}", e.id))?;
        ensure(report.passed(), || {
            let bad: Vec<String> = report
                .probes
                .iter()
                .filter(|p| !p.passed)
                .map(|p| format!("N = {} {:?}", p.n, p.note))
                .collect();
            format!("{}: {}", e.id, bad.join(", "))
        })?;
    }
    Ok(format!(
        "{} entries × {} probes",
        registry().entries().len(),
        probes.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("exact Binet identities", binet),
        ("generating-function overlap", gf_overlap),
        ("golden-ratio families", families),
        ("EQ1-EQ3 regressions", prior_results),
        ("THM24 double-factorial series", theorem_24),
        ("THM25A/THM25B Ramanujan-like series", theorem_25),
        ("THM26 zeta(2) series", theorem_26),
        ("THM27 G/pi series", theorem_27),
        ("deluxe series", deluxe),
        ("discrepancy fixtures", fixtures),
        ("determinism", determinism),
        ("tail-bound soundness", tail_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("acceptance {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
