use clap::{Parser, ValueEnum};
use rumin::mutation::Mutation;
use rumin_harness::fixture::{gen_fixture_with, load_factors, FixtureKind};
use rumin_harness::matrix::pairing_matrix;
use rumin_harness::{run_suite, HarnessError, Suite, SuiteConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

/// Exact randomized verification of the pseudohermitian identities.
#[derive(Parser)]
#[command(name = "verify", version)]
struct Args {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum polynomial degree of random fixtures.
    #[arg(long, default_value_t = 3)]
    degree: u32,
    /// Exponent m of the cutoff sigma^m in integral identities.
    #[arg(long, default_value_t = 8)]
    cutoff_exp: u32,
    /// Suite to run; repeatable. Default: all.
    #[arg(long = "suite", value_parser = parse_suite)]
    suites: Vec<Suite>,
    #[arg(long, default_value_t = 5)]
    cases: u64,
    /// Also run the floating-point cross-checks.
    #[arg(long)]
    numeric: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall times (reports are then no longer byte-stable).
    #[arg(long)]
    timings: bool,
    /// Run only this identity; repeatable.
    #[arg(long = "identity")]
    identities: Vec<String>,
    /// JSON file of conformal factors to use in place of random ones.
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Write the pairing matrix to this path and exit.
    #[arg(long)]
    pairing_matrix: Option<PathBuf>,
    /// Print one generated fixture of this kind and exit, e.g. `pq-form(1,1)`.
    #[arg(long)]
    gen_fixture: Option<String>,
    #[arg(long, hide = true)]
    mutation: Option<String>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: HarnessError| e.to_string())
}

enum Failure {
    Usage(String),
    Residual,
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: Args) -> Result<(), Failure> {
    if let Ok(n) = std::env::var("RUMIN_THREADS") {
        let n: usize = n.parse().map_err(|_| Failure::Usage(format!("RUMIN_THREADS must be a number, got {n}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let mut cfg = SuiteConfig {
        seed: args.seed,
        degree: args.degree,
        cutoff: args.cutoff_exp,
        cases: args.cases,
        numeric: args.numeric,
        identities: args.identities,
        timings: args.timings,
        ..SuiteConfig::default()
    };
    if !args.suites.is_empty() {
        cfg.suites = args.suites;
    }
    if let Some(m) = &args.mutation {
        cfg.mutation = Some(m.parse::<Mutation>().map_err(|e| Failure::Usage(e.to_string()))?);
    }
    if let Some(path) = &args.fixture {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        cfg.factors = load_factors(&text)?;
    }
    if let Some(kind) = &args.gen_fixture {
        let kind: FixtureKind = kind.parse()?;
        let f = gen_fixture_with(cfg.seed, kind, cfg.shape(), cfg.cutoff);
        let text = serde_json::to_string_pretty(&f).map_err(HarnessError::from)? + "\n";
        return emit(&args.out, &text);
    }
    if let Some(path) = &args.pairing_matrix {
        cfg.validate()?;
        let m = pairing_matrix(&cfg, 3).map_err(HarnessError::from)?;
        let text = serde_json::to_string_pretty(&m).map_err(HarnessError::from)? + "\n";
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return if m.entries.iter().all(|e| e.hermitian) { Ok(()) } else { Err(Failure::Residual) };
    }
    let report = run_suite(&cfg)?;
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    emit(&args.out, &text)?;
    if report.all_exact() {
        Ok(())
    } else {
        Err(Failure::Residual)
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Residual) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
