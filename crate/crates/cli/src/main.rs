use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod reproduce;

use casimir_core::invariants::{Sampling, DEFAULT_MAX_DEGREE, DEFAULT_TRIALS};

#[derive(Parser, Debug)]
#[command(name = "casimir", version, about = "Generalized Casimir invariants of Lie algebras given by structure constants")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Seed for the random evaluation points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random points for rank sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS, value_parser = parse_trials)]
    pub trials: usize,
    /// Highest degree searched for polynomial invariants.
    #[arg(long = "max-degree", global = true, default_value_t = DEFAULT_MAX_DEGREE, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Parameter value, `name=rational`; may be repeated.
    #[arg(long = "param", global = true, value_name = "NAME=RATIONAL")]
    pub params: Vec<String>,
    /// Double the trials and sample from a much wider range.
    #[arg(long, global = true)]
    pub paranoid: bool,
}

fn parse_trials(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl Config {
    pub fn sampling(&self) -> Sampling {
        let s = Sampling::new(self.trials, self.seed);
        if self.paranoid {
            s.paranoid()
        } else {
            s
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a file and check the Jacobi identity and the Levi metadata.
    Check { file: String },
    /// Print the number of invariants and the sampled generic rank.
    Count { file: String },
    /// Search for polynomial invariants.
    Invariants {
        file: String,
        /// Solve the subsystem of Levi generators on radical variables first.
        #[arg(long)]
        radical_only: bool,
    },
    /// Check whether a polynomial is an invariant.
    Verify {
        file: String,
        #[arg(long)]
        poly: String,
    },
    /// Browse the built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Recompute every tabulated result and print a pass/fail table.
    Reproduce,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show {
        name: String,
        /// Print the algebra file instead of the description.
        #[arg(long)]
        emit: bool,
    },
}

/// Why a command did not succeed; each maps to an exit code.
#[derive(Debug)]
pub enum Failure {
    /// The question was answered with "no".
    Negative(String),
    /// Bad input: unreadable file, parse error, invalid parameters.
    Input(String),
    /// A consistency check inside the tool failed.
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

/// What a command prints: text for people, a JSON value for scripts.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
}

fn run(cli: Cli) -> (Option<Report>, Option<Failure>) {
    let cfg = &cli.config;
    match cli.command {
        Command::Check { file } => commands::check(&file, cfg),
        Command::Count { file } => commands::count(&file, cfg),
        Command::Invariants { file, radical_only } => commands::invariants(&file, radical_only, cfg),
        Command::Verify { file, poly } => commands::verify(&file, &poly, cfg),
        Command::Catalog { action } => match action {
            CatalogAction::List => commands::catalog_list(),
            CatalogAction::Show { name, emit } => commands::catalog_show(&name, emit, cfg),
        },
        Command::Reproduce => reproduce::run(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.config.output;
    let outcome = std::panic::catch_unwind(move || run(cli));
    let (report, failure) = match outcome {
        Ok(pair) => pair,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            (None, Some(Failure::Internal(msg)))
        }
    };
    if let Some(report) = report {
        match output {
            Output::Text => print!("{}", report.text),
            Output::Json => println!("{}", report.json),
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            let msg = match &f {
                Failure::Negative(m) | Failure::Input(m) | Failure::Internal(m) => m,
            };
            if !msg.is_empty() {
                eprintln!("casimir: {msg}");
            }
            ExitCode::from(f.code())
        }
    }
}
