use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

use commands::Failure;

#[derive(Debug, Parser)]
#[command(name = "qcube", version, about = "Hypercube projection representations and the Q_3 magic fill-up")]
struct Cli {
    /// Override the default tolerance (also read from QCUBE_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomised checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON report here.
    #[arg(long, global = true, visible_alias = "report")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Facts about Q_n.
    Hypercube {
        #[command(subcommand)]
        action: HypercubeCmd,
    },
    /// Path words.
    Path {
        #[command(subcommand)]
        action: PathCmd,
    },
    /// Edge weightings.
    Weighting {
        #[command(subcommand)]
        action: WeightingCmd,
    },
    /// Representations.
    Rep {
        #[command(subcommand)]
        action: RepCmd,
    },
    /// Check every point of a simplex grid.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Fill the Q_3 magic isometry up to a 4x4 magic unitary at t.
    Fillup {
        #[arg(long)]
        t: String,
    },
    /// Run the acceptance suites up to dimension n.
    Selftest {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
enum HypercubeCmd {
    Info {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
enum PathCmd {
    /// Sort the flip indices and report the sign.
    Canon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        base: usize,
        /// Flip indices separated by spaces or commas.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Debug, Subcommand)]
enum WeightingCmd {
    /// Test the admissibility conditions.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum RepCmd {
    /// Build ρ_t.
    Build {
        #[arg(long)]
        t: String,
    },
    /// Identify each block of ρ_c with a block of some ρ_t.
    Classify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Search for a unitary intertwiner between two representations.
    Intertwine {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let mut cfg = qcube::config::RunConfig::from_env()?;
    if let Some(tol) = cli.tol {
        cfg.tolerance = tol;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    let echo = std::env::args().collect::<Vec<_>>().join(" ");
    let report = match cli.command {
        Command::Hypercube { action: HypercubeCmd::Info { n } } => commands::hypercube_info(&cfg, echo, n)?,
        Command::Path { action: PathCmd::Canon { n, base, word } } => commands::path_canon(echo, n, base, &word)?,
        Command::Weighting { action: WeightingCmd::Check { file } } => commands::weighting_check(&cfg, echo, &file)?,
        Command::Rep { action: RepCmd::Build { t } } => commands::rep_build(&cfg, echo, &t)?,
        Command::Rep { action: RepCmd::Classify { file } } => commands::rep_classify(&cfg, echo, &file)?,
        Command::Rep { action: RepCmd::Intertwine { a, b } } => commands::rep_intertwine(echo, &a, &b)?,
        Command::Sweep { n, resolution } => commands::sweep(&cfg, echo, n, resolution)?,
        Command::Fillup { t } => commands::fillup(echo, &t)?,
        Command::Selftest { n } => commands::selftest(&cfg, echo, n)?,
    };
    println!("{report}");
    if let Some(path) = cli.out {
        std::fs::write(&path, qcube::io::to_json_string(&report))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report.passed)
}
