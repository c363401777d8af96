mod commands;
mod input;
mod names;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// A-infinity structures on Ext of augmented algebras over F_p.
#[derive(Parser, Debug)]
#[command(name = "ainfhull", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Catalog name: trunc_poly:n, cyclic:n, elem_abelian:d, heisenberg, product(a,b).
    #[arg(long, conflicts_with = "input")]
    pub catalog: Option<String>,
    /// JSON file with an algebra ({p, basis, unit, aug, table}) or a group ({p, elements, mult}).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Prime. Required with --catalog, optional with --input (must then agree with the file).
    #[arg(long)]
    pub p: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct Run {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 leaves the default.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ext dimensions and the cup product.
    Ext {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: Run,
        /// Degree cap D (default: size-guarded ν + 1).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Transferred A-infinity structure on Ext.
    MinimalModel {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: Run,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Arity cap N (default max(ν, 4)).
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Classical hull of the dual bar construction, truncated at a weight.
    Hull {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: Run,
        /// Weight cap W (default ν).
        #[arg(long)]
        weight: Option<usize>,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Full reconstruction and the isomorphism check.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: Run,
        #[arg(long)]
        weight: Option<usize>,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Endomorphism model against the cochain model.
    CompareModels {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: Run,
        /// Resolution depth (default 4, or 3 when 4 exceeds the size guard).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 4)]
        arity: usize,
    },
    /// Restriction to a subgroup and the reconstruction square.
    Restrict {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: Run,
        /// "center" or "gen:i,j,..." (element indices of the group).
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        arity: Option<usize>,
        /// Weight through which the morphism checks on η run.
        #[arg(long, default_value_t = 4)]
        weight: usize,
    },
    /// Random dgas through the whole transfer pipeline.
    Fuzz {
        #[command(flatten)]
        run: Run,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        arity: usize,
    },
}

/// Failures that map to exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    Input(String),
    /// Exit code 3; the report is still written.
    Gate(serde_json::Value),
    Io(String),
}

fn write_output(run: &Run, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match &run.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    let run = match &cmd {
        Command::Ext { run, .. }
        | Command::MinimalModel { run, .. }
        | Command::Hull { run, .. }
        | Command::Verify { run, .. }
        | Command::CompareModels { run, .. }
        | Command::Restrict { run, .. }
        | Command::Fuzz { run, .. } => run.clone(),
    };
    if run.threads > 0 {
        ainfhull::par::set_threads(run.threads).map_err(CliError::Input)?;
    }
    let value = match cmd {
        Command::Ext { source, run, max_degree } => commands::ext(&source, &run, max_degree)?,
        Command::MinimalModel { source, run, max_degree, arity } => {
            commands::minimal_model(&source, &run, max_degree, arity)?
        }
        Command::Hull { source, run, weight, arity } => commands::hull(&source, &run, weight, arity)?,
        Command::Verify { source, run, weight, arity } => commands::verify(&source, &run, weight, arity)?,
        Command::CompareModels { source, run, max_degree, arity } => {
            commands::compare_models(&source, &run, max_degree, arity)?
        }
        Command::Restrict { source, run, subgroup, arity, weight } => {
            commands::restrict(&source, &run, &subgroup, arity, weight)?
        }
        Command::Fuzz { run, count, arity } => commands::fuzz(&run, count, arity)?,
    };
    let passed = value.get("passed").and_then(|v| v.as_bool()).unwrap_or(true);
    if passed {
        write_output(&run, &value)
    } else {
        write_output(&run, &value)?;
        Err(CliError::Gate(value))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Gate(value)) => {
            let failures: Vec<String> = value
                .pointer("/gates/checks")
                .and_then(|c| c.as_array())
                .map(|checks| {
                    checks
                        .iter()
                        .filter(|c| c.get("passed") == Some(&serde_json::Value::Bool(false)))
                        .filter_map(|c| c.get("name").and_then(|n| n.as_str()).map(String::from))
                        .collect()
                })
                .unwrap_or_default();
            eprintln!("gate failure: {}", if failures.is_empty() { "see report".into() } else { failures.join(", ") });
            ExitCode::from(3)
        }
    }
}
