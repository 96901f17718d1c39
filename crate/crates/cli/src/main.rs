use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qwalk::graph::parse_any;
use qwalk::report::{analyze_graph, pair_document, scan_catalog};
use qwalk::{AnalysisConfig, Error};

const EXIT_EMPTY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Continuous-time quantum walk and perfect state transfer analyzer.
#[derive(Debug, Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Shared {
    /// End of the time search window.
    #[arg(long, global = true, default_value_t = 50.0)]
    t_max: f64,
    /// Fidelity at which a transfer is declared.
    #[arg(long, global = true, default_value_t = 1.0 - 1e-9)]
    threshold: f64,
    /// Eigenvalue grouping tolerance (default depends on n and the spectral radius).
    #[arg(long, global = true)]
    tol_group: Option<f64>,
    /// Minimum `(E_r)[u][u]` for an eigenvalue to be in the support.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_support: f64,
    /// Largest denominator in the ratio condition.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    den_bound: u64,
    /// Largest n for exact arithmetic.
    #[arg(long, global = true, default_value_t = 64)]
    exact_cap: usize,
    /// Largest n for brute-force automorphism checks.
    #[arg(long, global = true, default_value_t = 10)]
    bf_cap: usize,
    /// Worker threads.
    #[arg(long, global = true, env = "QWALK_JOBS")]
    jobs: Option<usize>,
}

impl Shared {
    fn config(&self) -> AnalysisConfig {
        AnalysisConfig {
            t_max: self.t_max,
            threshold: self.threshold,
            grouping_tolerance: self.tol_group,
            support_tolerance: self.tol_support,
            denominator_bound: self.den_bound,
            exact_cap: self.exact_cap,
            brute_force_cap: self.bf_cap,
            jobs: self.jobs,
            ..AnalysisConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum, supports, partitions and cospectral pairs of one graph.
    Analyze {
        /// graph6 or JSON edge-list file, or `-` for stdin.
        input: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Necessary conditions and PST search for one vertex pair.
    Pair { input: PathBuf, u: usize, v: usize },
    /// One JSON line per graph of a graph6 catalog.
    Scan { input: PathBuf },
}

enum Failure {
    Empty(String),
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if text.trim().is_empty() {
        return Err(Failure::Empty(format!("{}: empty input", path.display())));
    }
    Ok(text)
}

// A closed downstream pipe (`qwalk scan cat.g6 | head`) is not an error.
fn stdout_closed(r: io::Result<()>) -> io::Result<()> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn emit(value: &impl serde::Serialize, copy: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    if let Some(path) = copy {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    stdout_closed(writeln!(io::stdout().lock(), "{text}"))?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = cli.shared.config();
    cfg.validate()?;
    match cli.command {
        Command::Analyze { input, json } => {
            let g = parse_any(&read_input(&input)?)?;
            emit(&analyze_graph(&g, &cfg)?, json.as_deref())
        }
        Command::Pair { input, u, v } => {
            let g = parse_any(&read_input(&input)?)?;
            emit(&pair_document(&g, u, v, &cfg)?, None)
        }
        Command::Scan { input } => {
            let outcome = scan_catalog(&read_input(&input)?, &cfg)?;
            stdout_closed(outcome.write_to(io::stdout().lock()))?;
            if outcome.internal_errors > 0 {
                Err(Failure::Internal(format!("{} graphs hit an internal error", outcome.internal_errors)))
            } else if outcome.processed == 0 {
                Err(Failure::Empty("no graph in the catalog could be analyzed".into()))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Empty(m) => (EXIT_EMPTY, m),
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Internal(m) => (EXIT_INTERNAL, m),
            };
            eprintln!("qwalk: {message}");
            ExitCode::from(code)
        }
    }
}
