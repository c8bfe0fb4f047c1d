//! `bdyck`: count, list, map and verify height-bounded Dyck paths without
//! valleys at height h-1 and their 312-avoiding permutation images.

mod commands;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "bdyck", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recurrence,
    Series,
    Matrix,
    Brute,
    Eco,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Paths,
    Perms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Auto,
    ToPerm,
    ToPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyScope {
    All,
    Bijection,
    Identities,
    Eco,
    Matrix,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print D_0 .. D_{n-max} for a height bound.
    Count {
        #[arg(long)]
        h: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
        /// Largest semilength the brute-force method may enumerate.
        #[arg(long, default_value_t = bounded_dyck::dyck::DEFAULT_CAP)]
        cap: usize,
    },
    /// List D_n^(h,2) or its permutation image, with generating-tree labels.
    List {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Paths)]
        kind: Kind,
        #[arg(long, default_value_t = bounded_dyck::dyck::DEFAULT_CAP)]
        cap: usize,
    },
    /// Test paths for membership in D^(h,k); reads arguments or stdin lines.
    Classify {
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        inputs: Vec<String>,
    },
    /// Map paths to permutations and back; reads arguments or stdin lines.
    Map {
        #[arg(long, value_enum, default_value_t = Direction::Auto)]
        direction: Direction,
        inputs: Vec<String>,
    },
    /// Print the generating tree down to a given level.
    Tree {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Kind::Paths)]
        kind: Kind,
        #[arg(long, default_value_t = bounded_dyck::eco::DEFAULT_LEVEL_CAP)]
        cap: usize,
    },
    /// Print the succession rule for a height bound.
    Rule {
        #[arg(long)]
        h: usize,
    },
    /// Print the production matrix P_h.
    Matrix {
        #[arg(long)]
        h: usize,
    },
    /// Print the generating function f_h = p_h / q_h.
    Gf {
        #[arg(long)]
        h: usize,
    },
    /// Print the coefficient table a_{h,j}.
    Table {
        #[arg(long = "h-max", default_value_t = 14)]
        h_max: usize,
        #[arg(long = "j-max", default_value_t = 8)]
        j_max: usize,
    },
    /// Run the cross-checks and report pass/fail per invariant.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyScope::All)]
        scope: VerifyScope,
        #[arg(long = "n-max", default_value_t = 9)]
        n_max: usize,
        #[arg(long = "h-max", default_value_t = 5)]
        h_max: usize,
        #[arg(long = "alpha-max", default_value_t = 6)]
        alpha_max: u32,
    },
}

/// What a subcommand produced.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

/// Exit codes: 1 for a failed check, 2 for bad input.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

pub fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_inputs(args: Vec<String>) -> Result<Vec<String>, CliError> {
    if !args.is_empty() {
        return Ok(args);
    }
    let text = std::io::read_to_string(std::io::stdin()).map_err(usage)?;
    Ok(text.lines().map(|l| l.trim_end_matches('\r').to_string()).collect())
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    match cli.command {
        Command::Count { h, n_max, method, cap } => commands::count(h, n_max, method, cap, fmt),
        Command::List { h, n, kind, cap } => commands::list(h, n, kind, cap, fmt),
        Command::Classify { h, k, inputs } => commands::classify(h, k, &read_inputs(inputs)?, fmt),
        Command::Map { direction, inputs } => Ok(commands::map(direction, &read_inputs(inputs)?, fmt)),
        Command::Tree { h, depth, kind, cap } => commands::tree(h, depth, kind, cap, fmt),
        Command::Rule { h } => commands::rule(h, fmt),
        Command::Matrix { h } => commands::matrix(h, fmt),
        Command::Gf { h } => commands::generating_function(h, fmt),
        Command::Table { h_max, j_max } => commands::table(h_max, j_max, fmt),
        Command::Verify {
            scope,
            n_max,
            h_max,
            alpha_max,
        } => commands::verify(scope, n_max, h_max, alpha_max, fmt),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out_path = cli.out.clone();
    match dispatch(cli) {
        Ok(outcome) => {
            eprint!("{}", outcome.stderr);
            let written = match &out_path {
                Some(path) => fs::write(path, &outcome.stdout),
                None => std::io::stdout().write_all(outcome.stdout.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Verification(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
