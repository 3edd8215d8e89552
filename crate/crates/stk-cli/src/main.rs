use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stk_cli::{analyze, apply, certify, decompose, load, present, CliError, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "stk", version, about = "Structure of the inversion-transvection stabilizer St(K) of a graph group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Graph file (JSON or edge list); `-` reads stdin
    graph: String,

    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Depth bound for factorisation searches
    #[arg(long, default_value_t = 8)]
    depth: usize,

    /// Bound on cyclic cores given a canonical conjugacy representative
    #[arg(long, default_value_t = 3)]
    radius: usize,

    /// Class representatives to use instead of the first vertex of each class
    #[arg(long, value_delimiter = ',')]
    transversal: Vec<String>,
}

impl Common {
    fn config(&self, keep_perms: bool) -> RunConfig {
        RunConfig {
            transversal: self.transversal.clone(),
            depth: self.depth,
            radius: self.radius,
            format: self.format,
            keep_perms,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Admissible sets, classes, heights and levels
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Tower factorisation of a `;`-separated product of Whitehead automorphisms
    Decompose {
        #[command(flatten)]
        common: Common,
        automorphism: String,
    },
    /// Finite presentation of St(K)
    Present {
        #[command(flatten)]
        common: Common,
        /// Keep Type 1 class permutations as generators
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        keep_perms: bool,
    },
    /// Certify that a word over Ω_x is the identity
    Certify {
        #[command(flatten)]
        common: Common,
        /// Vertex x of the free class
        #[arg(long = "class")]
        class: String,
        /// Whitespace-separated generator symbols; `(s)^-1` for inverses
        word: String,
    },
    /// Whitehead automorphism utilities
    Wh {
        #[command(subcommand)]
        command: WhCommand,
    },
}

#[derive(Subcommand)]
enum WhCommand {
    /// Apply a product of Whitehead automorphisms to a group word
    Apply {
        #[command(flatten)]
        common: Common,
        automorphism: String,
        word: String,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze { common } => analyze(&load(&common.graph)?.graph, &common.config(true)),
        Command::Decompose { common, automorphism } => {
            decompose(&load(&common.graph)?.graph, &automorphism, &common.config(true))
        }
        Command::Present { common, keep_perms } => present(&load(&common.graph)?.graph, &common.config(keep_perms)),
        Command::Certify { common, class, word } => {
            certify(&load(&common.graph)?.graph, &class, &word, &common.config(true))
        }
        Command::Wh { command: WhCommand::Apply { common, automorphism, word } } => {
            apply(&load(&common.graph)?.graph, &automorphism, &word, &common.config(true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("stk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
