//! `weilv`: point counts, zeta functions and Weil checks from the command line.
//!
//! Every command writes one JSON report. Exit status is 0 when all verdicts
//! pass or do not apply, 2 when a check fails, 1 on usage or resource errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use weilv::charsum::{exponential_sum, kloosterman, ramanujan_tau, CharacterSumResult, TauReport};
use weilv::counting::catalog::fixture;
use weilv::counting::{max_depth, parse_variety, CountConfig, VarietySpec};
use weilv::ffield::FieldCtx;
use weilv::report::{analyze, AnalysisOptions, AnalysisReport, Stage};
use weilv::selftest::{selftest, SelftestReport};
use weilv::weil::Verdict;
use weilv::{Error, ErrorKind};

const THREADS_ENV: &str = "WEILV_THREADS";
const AUTO_DEPTH: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "weilv", version, about = "Zeta functions of varieties over finite fields, with Weil conjecture checks")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Variety description (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Use a built-in catalog fixture instead of --input.
    #[arg(long, global = true, value_name = "ID", conflicts_with = "input")]
    fixture: Option<String>,
    /// Number of extension degrees to count, N_1..N_m. Defaults to
    /// num+den degree when both are given, else the deepest level (up to
    /// 8) the budget allows.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Numerator degree of the zeta function; discovered when omitted.
    #[arg(long, global = true, requires = "den_degree")]
    num_degree: Option<usize>,
    /// Denominator degree of the zeta function; discovered when omitted.
    #[arg(long, global = true, requires = "num_degree")]
    den_degree: Option<usize>,
    /// Relative tolerance for root magnitudes.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Maximum number of points enumerated per count.
    #[arg(long, global = true, default_value_t = weilv::ffield::DEFAULT_BUDGET)]
    budget: u64,
    /// Report path; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Worker threads for counting (1 = sequential). WEILV_THREADS wins.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Point counts N_1..N_m and closed points by degree.
    Count,
    /// Counts plus the zeta series and its rational form.
    Zeta,
    /// The full pipeline with every Weil check.
    WeilReport,
    /// Exponential sum of the first equation of the input over F_q^n.
    Expsum,
    /// Multiple Kloosterman sum over F_q.
    Kloosterman {
        /// Field size, a prime power.
        #[arg(long)]
        q: u64,
        /// Number of variables.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Shift multiplying the inverse term, as an element index.
        #[arg(long)]
        shift: Option<u64>,
    },
    /// Ramanujan tau up to a limit, with bounds at primes.
    Tau {
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Runs the fixture catalog and character-sum checks.
    Selftest,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct CharsumEnvelope<T: Serialize> {
    settings: CharsumSettings,
    charsum: T,
    verdict: Verdict,
}

#[derive(Serialize)]
struct CharsumSettings {
    tol: f64,
    budget: u64,
}

/// Why the run stopped, with the exit code it maps to.
struct Failure {
    code: u8,
    tag: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Check | ErrorKind::Numerical => 2,
            _ => 1,
        };
        Failure {
            code,
            tag: e.tag(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        tag: "usage",
        message: message.into(),
    }
}

fn io_failure(what: &str, path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure {
        code: 1,
        tag: "io",
        message: format!("{what} {}: {e}", path.display()),
    }
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    let t = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
        ),
        _ => flag,
    };
    match t {
        Some(0) => Err(usage("thread count must be at least 1")),
        t => Ok(t),
    }
}

fn load_variety(c: &Common) -> Result<VarietySpec, Failure> {
    match (&c.input, &c.fixture) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure("cannot read", path, e))?;
            parse_variety(&text).map_err(|e| {
                let mut f = Failure::from(e.clone());
                f.message = match e {
                    Error::Invalid(m) => format!("{}: {m}", path.display()),
                    e => format!("{}: {e}", path.display()),
                };
                f
            })
        }
        (None, Some(id)) => fixture(id)
            .map(|f| f.variety)
            .ok_or_else(|| usage(format!("unknown fixture {id:?}"))),
        (None, None) => Err(usage("this command needs --input or --fixture")),
    }
}

fn emit<T: Serialize>(c: &Common, command: &str, body: T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(&Envelope { command, body }).map_err(|e| Failure {
        code: 1,
        tag: "internal",
        message: e.to_string(),
    })?;
    text.push('\n');
    match &c.output {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure("cannot write", path, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure("cannot write", std::path::Path::new("<stdout>"), e)),
    }
}

fn charsum_report<T: Serialize>(c: &Common, command: &str, body: T, verdict: Verdict) -> Result<Verdict, Failure> {
    let env = CharsumEnvelope {
        settings: CharsumSettings {
            tol: c.tol,
            budget: c.budget,
        },
        charsum: body,
        verdict,
    };
    emit(c, command, env)?;
    Ok(verdict)
}

fn run(cli: Cli) -> Result<Verdict, Failure> {
    let c = &cli.common;
    if !(c.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    if c.budget == 0 {
        return Err(usage("--budget must be at least 1"));
    }
    if c.depth == Some(0) {
        return Err(usage("--depth must be at least 1"));
    }
    let count = CountConfig {
        budget: c.budget,
        threads: threads(c.threads)?,
    };
    let stage = match cli.command {
        Command::Count => Some(("count", Stage::Count)),
        Command::Zeta => Some(("zeta", Stage::Zeta)),
        Command::WeilReport => Some(("weil-report", Stage::Weil)),
        _ => None,
    };
    if let Some((name, stage)) = stage {
        let v = load_variety(c)?;
        let degrees = c.num_degree.zip(c.den_degree);
        let depth = match (c.depth, degrees) {
            (Some(m), _) => m,
            (None, Some((n, d))) => (n + d).max(1),
            (None, None) => max_depth(&v, AUTO_DEPTH, c.budget).max(1),
        };
        let opts = AnalysisOptions {
            stage,
            depth,
            degrees,
            tol: c.tol,
            count,
            ..Default::default()
        };
        let report: AnalysisReport = analyze(&v, &opts)?;
        let verdict = report.verdict;
        emit(c, name, report)?;
        return Ok(verdict);
    }
    match cli.command {
        Command::Expsum => {
            let v = load_variety(c)?;
            let [f] = v.equations() else {
                return Err(usage("expsum needs exactly one equation"));
            };
            let r: CharacterSumResult = exponential_sum(f, v.label(), &count)?;
            let verdict = r.verdict;
            charsum_report(c, "expsum", r, verdict)
        }
        Command::Kloosterman { q, n, shift } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let ctx = FieldCtx::of_order(q)?;
            let a = match shift {
                Some(i) if i == 0 || i >= q => return Err(usage(format!("--shift must be a nonzero element index below {q}"))),
                Some(i) => Some(ctx.from_index(i)),
                None => None,
            };
            let r = kloosterman(&ctx, n, a.as_ref(), &count)?;
            let verdict = r.verdict;
            charsum_report(c, "kloosterman", r, verdict)
        }
        Command::Tau { limit } => {
            let r: TauReport = ramanujan_tau(limit)?;
            let verdict = r.verdict;
            charsum_report(c, "tau", r, verdict)
        }
        Command::Selftest => {
            let r: SelftestReport = selftest(&count, c.tol)?;
            let verdict = r.verdict;
            emit(c, "selftest", r)?;
            Ok(verdict)
        }
        Command::Count | Command::Zeta | Command::WeilReport => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let first = e.to_string();
            let line = first.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("error: usage: {line}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(v) if v.is_ok() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(2),
        Err(f) => {
            eprintln!("error: {}: {}", f.tag, f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}
