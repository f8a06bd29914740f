//! `sumsetlab` command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sumsetlab_core::verify::{PairSpace, DEFAULT_MAX_M, GUARD};
use sumsetlab_core::{
    family_claims_check, normalize, sweep, Error, FamilySpec, Frontier, HoleLedger, IntSet,
    NormalizedPair, Predicate, PredicateReport, Selection, SumsetProfile, TheoremVerdict,
};

const SCHEMA_VERSION: u32 = 1;
const CENSUS_SAMPLES: usize = 1;
const GUARD_ENV: &str = "SUMSETLAB_MAX_GUARD";

#[derive(Parser)]
#[command(
    name = "sumsetlab",
    version,
    about = "Sumset structure analysis and exhaustive verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one pair of sets.
    Analyze(AnalyzeArgs),
    /// Check every normalized pair up to a diameter bound.
    Verify(VerifyArgs),
    /// Print a member of an extremal family.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Set literal such as `0,1,2,3,5`, a JSON array, or `@path` to a JSON array file.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long)]
    timestamps: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_M)]
    max_m: u32,
    /// Restrict to one predicate; repeatable.
    #[arg(long = "only", value_name = "PREDICATE")]
    only: Vec<Predicate>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for `report.json` and `census.csv`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    timestamps: bool,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Interval followed by elements spaced two apart.
    One {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        check: bool,
    },
    /// Two blocks separated by a gap.
    Two {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        x: u32,
        #[arg(long)]
        check: bool,
    },
}

/// A failure mapped to its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Failure {
            code: 4,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse(_) | Error::Empty | Error::Range(_) => 2,
            Error::Contract(_) | Error::Guard { .. } | Error::Domain(_) => 3,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Verify(args) => verify(args),
        Command::Gen { family } => gen(family),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn unix_time() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// Wraps a report with an optional generation time at the end.
#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    #[serde(flatten)]
    inner: &'a T,
    #[serde(rename = "generatedAt", skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
}

fn to_json<T: Serialize>(value: &T, timestamps: bool) -> String {
    let stamped = Stamped {
        inner: value,
        generated_at: timestamps.then(unix_time),
    };
    let mut s = serde_json::to_string_pretty(&stamped).expect("reports serialize");
    s.push('\n');
    s
}

fn print(s: &str) -> CmdResult {
    io::stdout().write_all(s.as_bytes()).map_err(|e| Failure {
        code: 4,
        message: format!("stdout: {e}"),
    })?;
    Ok(0)
}

// ---------------------------------------------------------------- analyze

fn read_set(arg: &str) -> Result<IntSet, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let path = Path::new(path);
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let text = text.trim();
            if !text.starts_with('[') {
                return Err(Failure::usage(format!(
                    "{}: expected a JSON array of integers",
                    path.display()
                )));
            }
            Ok(text.parse()?)
        }
        None => Ok(arg.parse()?),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Inputs<'a> {
    a: &'a IntSet,
    b: &'a IntSet,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Normalized {
    a: IntSet,
    b: IntSet,
    /// Translations subtracted from the inputs, in input order.
    offset_a: i64,
    offset_b: i64,
    /// True when the inputs were exchanged so that `diam A >= diam B`.
    swapped: bool,
}

#[derive(Serialize)]
struct Verdicts {
    theorem: TheoremVerdict,
    corollary: TheoremVerdict,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeEnvelope<'a> {
    schema_version: u32,
    command: &'static str,
    inputs: Inputs<'a>,
    normalized: Normalized,
    sumset: IntSet,
    profile: SumsetProfile,
    ledger: HoleLedger,
    frontier: Frontier,
    verdicts: Verdicts,
    predicates: Vec<PredicateReport>,
}

fn analyze(args: AnalyzeArgs) -> CmdResult {
    let a_in = read_set(&args.a)?;
    let b_in = read_set(&args.b)?;
    let (a, offset_a) = normalize(&a_in);
    let (b, offset_b) = normalize(&b_in);
    let swapped = b.max() > a.max();
    let (na, nb) = if swapped { (&b, &a) } else { (&a, &b) };
    let pair = NormalizedPair::new(na, nb)?;
    let envelope = AnalyzeEnvelope {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        inputs: Inputs { a: &a_in, b: &b_in },
        normalized: Normalized {
            a: na.clone(),
            b: nb.clone(),
            offset_a,
            offset_b,
            swapped,
        },
        sumset: pair.sumset(),
        profile: pair.profile(),
        ledger: pair.ledger(),
        frontier: pair.frontier(),
        verdicts: Verdicts {
            theorem: pair.theorem_verdict(),
            corollary: pair.corollary_verdict(),
        },
        predicates: Predicate::ALL.into_iter().map(|p| pair.check(p)).collect(),
    };
    print(&to_json(&envelope, args.timestamps))
}

// ----------------------------------------------------------------- verify

fn guard_limit() -> Result<u32, Failure> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v.trim().parse::<u32>().map(|g| g.min(GUARD)).map_err(|_| {
            Failure::usage(format!("{GUARD_ENV}: `{v}` is not a nonnegative integer"))
        }),
        Err(_) => Ok(GUARD),
    }
}

fn verify(args: VerifyArgs) -> CmdResult {
    let space = PairSpace::with_guard(args.max_m, guard_limit()?)?;
    let selection = if args.only.is_empty() {
        Selection::all()
    } else {
        Selection::only(args.only.iter().copied())
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(Failure::usage("--jobs must be at least 1"));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| Failure {
        code: 4,
        message: format!("thread pool: {e}"),
    })?;
    let (report, census) = pool.install(|| sweep(space, selection, CENSUS_SAMPLES));

    fs::create_dir_all(&args.out).map_err(|e| Failure::io(&args.out, e))?;
    let report_path = args.out.join("report.json");
    fs::write(&report_path, to_json(&report, args.timestamps))
        .map_err(|e| Failure::io(&report_path, e))?;
    let census_path = args.out.join("census.csv");
    fs::write(&census_path, census.to_csv()).map_err(|e| Failure::io(&census_path, e))?;

    let falsified = report.falsifications();
    println!(
        "maxM={} pairs={} hypothesisPairs={} tight={} falsified={} report={}",
        report.max_m,
        report.total_pairs,
        report.hypothesis_pairs,
        report.tight_pairs,
        falsified,
        report_path.display()
    );
    for c in &report.counterexamples {
        eprintln!(
            "counterexample [{}] A={{{}}} B={{{}}}: {}",
            c.predicate, c.a, c.b, c.detail
        );
    }
    Ok(if falsified == 0 { 0 } else { 1 })
}

// -------------------------------------------------------------------- gen

fn gen(family: GenFamily) -> CmdResult {
    let (spec, check) = match family {
        GenFamily::One { k, r, check } => (FamilySpec::One { k, r }, check),
        GenFamily::Two { k, x, check } => (FamilySpec::Two { k, x }, check),
    };
    let set = spec.build()?;
    let mut out = format!("{set}\n");
    if !check {
        return print(&out);
    }
    let claims = family_claims_check(spec)?;
    out.push_str(&to_json(&claims, false));
    print(&out)?;
    Ok(if claims.holds() { 0 } else { 1 })
}
