use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use binharm_core::ball::{bits_for_digits, constant, ConstantName};
use binharm_core::exact::{parse_rational, SurdQ5};
use binharm_core::genfunc::{gf_eval_exact, GfName};
use binharm_core::registry::{list_identities, registry, Family, Filter, IdentityEntry, Status};
use binharm_core::series::DEFAULT_MAX_TERMS;
use binharm_core::verifier::{
    summarize, verify_all, verify_entry, DigitsPolicy, PrecisionPolicy, SuiteOptions, SuiteReport, VerificationReport,
};

/// Exit status when a verdict contradicts its expectation.
const EXIT_UNEXPECTED: u8 = 1;
/// Exit status for bad arguments, unknown ids and evaluation errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "binharm",
    version,
    about = "Rigorous verification of central-binomial harmonic series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Guard bits added to the working precision of every evaluation.
    #[arg(long, global = true, env = "BINHARM_GUARD_BITS", default_value_t = 64)]
    guard_bits: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the identity catalog.
    List {
        /// AS_PRINTED_OK, AS_PRINTED_DISCREPANT, CORRECTED or PRIOR_WORK.
        #[arg(long)]
        status: Option<String>,
        /// FIB, LUCAS, HD_LUCAS or HD_FIB.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Verify one identity or the whole catalog.
    Verify(VerifyArgs),
    /// Evaluate a generating function at an exact rational point.
    Eval {
        /// GF_M, GF_HD, GF_H2N, GF_CAT_HD, GF_CAT_H2N, GF_CAT_HALF, GF_EQ28, GF_EQ29, GF_EQ30 or GF_SHIFTED(k).
        #[arg(long)]
        gf: String,
        /// Rational point `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print every named constant.
    Constants {
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "target")]
struct Target {
    /// Catalog id such as `EQ36` (case-insensitive).
    #[arg(long)]
    id: Option<String>,
    /// Every catalog entry, in parallel.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: Target,
    /// Digit target; defaults to the convergence-class policy.
    #[arg(long)]
    digits: Option<u32>,
    /// Cap on summed terms before reporting the best enclosure.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for `--all`; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn list(status: Option<String>, family: Option<String>, format: Format) -> Result<(), Failure> {
    let filter = Filter {
        status: status.map(|s| s.parse::<Status>()).transpose()?,
        family: family.map(|f| f.parse::<Family>()).transpose()?,
    };
    let entries = list_identities(&filter);
    match format {
        Format::Json => {
            let records: Vec<_> = entries.iter().map(|e| e.catalog_record()).collect();
            print_json(&records)
        }
        Format::Table => {
            println!(
                "{:<18} {:<9} {:<22} {:<15} {:<12} LHS",
                "ID", "EQ", "STATUS", "TAIL", "FAMILY"
            );
            for e in entries {
                let fam = e.family.map(|f| format!("{} r={}", f.family, f.r)).unwrap_or_default();
                println!(
                    "{:<18} {:<9} {:<22} {:<15} {:<12} {}",
                    e.id,
                    e.paper_eq.to_string(),
                    e.status.name(),
                    e.tail_kind().name(),
                    fam,
                    e.lhs_text
                );
            }
            Ok(())
        }
    }
}

/// Enclosure cut to the digits the comparison supports.
fn short(report: &VerificationReport, lhs: bool) -> String {
    let b = if lhs { &report.lhs } else { &report.rhs };
    let sig = report.agreed_digits.clamp(3, 40) as usize;
    b.as_ref().map_or_else(|| "-".to_string(), |b| b.to_decimal_sig(sig))
}

fn print_reports(reports: &[VerificationReport]) {
    println!(
        "{:<18} {:<13} {:<9} {:>6} {:>9} {:>8}  LHS | RHS",
        "ID", "VERDICT", "EXPECTED", "DIGITS", "TERMS", "TIME"
    );
    for r in reports {
        println!(
            "{:<18} {:<13} {:<9} {:>6} {:>9} {:>7.2}s  {} | {}",
            r.id,
            r.verdict.name(),
            r.expected.name(),
            format!("{}/{}", r.agreed_digits.max(0), r.requested_digits),
            r.terms_used,
            r.wall_time,
            short(r, true),
            short(r, false)
        );
        if let Some(note) = &r.note {
            println!("{:<18} note: {note}", "");
        }
    }
}

fn verify(args: VerifyArgs, precision: PrecisionPolicy) -> Result<(), Failure> {
    if let Some(id) = args.target.id {
        let entry: &IdentityEntry = registry().get(&id)?;
        let digits = args.digits.unwrap_or_else(|| DigitsPolicy::default().digits_for(entry));
        let report = verify_entry(entry, digits, args.max_terms, precision)?;
        match args.format {
            Format::Json => print_json(&report)?,
            Format::Table => print_reports(std::slice::from_ref(&report)),
        }
        return if report.as_expected() {
            Ok(())
        } else {
            Err(Failure(
                EXIT_UNEXPECTED,
                format!(
                    "{}: {} where {} was expected",
                    report.id,
                    report.verdict.name(),
                    report.expected.name()
                ),
            ))
        };
    }
    let opts = SuiteOptions {
        digits: args.digits.map_or_else(DigitsPolicy::default, DigitsPolicy::uniform),
        max_terms: args.max_terms,
        precision,
        workers: args.workers,
    };
    let suite: SuiteReport = verify_all(&opts)?;
    match args.format {
        Format::Json => print_json(&suite)?,
        Format::Table => {
            print_reports(&suite.reports);
            let s = summarize(&suite.reports);
            println!();
            for (status, c) in &s.by_status {
                println!(
                    "{status:<22} pass {:>3}  fail {:>3}  inconclusive {:>3}",
                    c.pass, c.fail, c.inconclusive
                );
            }
            let fixtures: Vec<String> = s
                .expected_fail
                .iter()
                .map(|f| format!("{} {}", f.id, f.verdict.name()))
                .collect();
            println!("expected-FAIL fixtures: {}", fixtures.join(", "));
        }
    }
    if suite.summary.ok {
        Ok(())
    } else {
        Err(Failure(
            EXIT_UNEXPECTED,
            format!("unexpected verdicts: {}", suite.summary.unexpected.join(", ")),
        ))
    }
}

fn eval(gf: &str, x: &str, digits: u32, format: Format, precision: PrecisionPolicy) -> Result<(), Failure> {
    let name: GfName = gf.parse()?;
    let q = parse_rational(x)?;
    let prec = bits_for_digits(digits, precision.guard_bits);
    let value = gf_eval_exact(name, &SurdQ5::from_rational(q.clone()), prec)?;
    let reached = value.agreed_digits(&value) >= i64::from(digits);
    match format {
        Format::Json => print_json(&json!({
            "gf": name.to_string(),
            "x": q.to_string(),
            "digits": digits,
            "value": value.to_decimal(),
            "reached": reached,
        })),
        Format::Table => {
            println!("{name}({q}) = {}", value.to_decimal_sig(digits as usize));
            Ok(())
        }
    }
}

fn constants(digits: u32, format: Format, precision: PrecisionPolicy) -> Result<(), Failure> {
    let prec = bits_for_digits(digits, precision.guard_bits);
    let values: Vec<(&str, String)> = ConstantName::ALL
        .iter()
        .map(|&c| (c.name(), constant(c, prec).to_decimal_sig(digits as usize)))
        .collect();
    match format {
        Format::Json => {
            let map: serde_json::Map<String, Value> = values
                .into_iter()
                .map(|(k, v)| (k.to_string(), Value::String(v)))
                .collect();
            print_json(&map)
        }
        Format::Table => {
            for (k, v) in values {
                println!("{k:<10} {v}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = PrecisionPolicy {
        guard_bits: cli.guard_bits,
        ..PrecisionPolicy::default()
    };
    let result = match cli.command {
        Command::List { status, family, format } => list(status, family, format),
        Command::Verify(args) => verify(args, precision),
        Command::Eval { gf, x, digits, format } => eval(&gf, &x, digits, format, precision),
        Command::Constants { digits, format } => constants(digits, format, precision),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("binharm: {msg}");
            ExitCode::from(code)
        }
    }
}
