use std::io::Write;
use std::process::ExitCode;

use alphastab::oracle::harness::HarnessConfig;
use alphastab_cli::{cmd_analyze, cmd_decompose, cmd_generate, cmd_verify, Failure, GenerateArgs};
use clap::{Parser, Subcommand};

/// Stability-number robustness of graphs under single edge changes.
#[derive(Parser)]
#[command(name = "alphastab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class, α, μ and every stability verdict with its certificate.
    Analyze {
        path: String,
        #[arg(long)]
        json: bool,
    },
    /// Bistable pieces of an α⁺-stable bipartite graph, or with --ears the
    /// ear decomposition of a bistable one.
    Decompose {
        path: String,
        #[arg(long)]
        ears: bool,
        #[arg(long)]
        json: bool,
    },
    /// Writes a generated graph as an edge list with `# key=value` metadata.
    Generate {
        /// cycle, complete-bipartite, path, tree, ear-growth, substitute or union
        family: String,
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Template name for substitute, e.g. c4 or k3x3.
        #[arg(long)]
        template: Option<String>,
        /// Comma-separated piece names, e.g. c4,ear6,p4.
        #[arg(long)]
        pieces: Option<String>,
        /// Union bridges as piece:vertex-piece:vertex, comma separated.
        #[arg(long)]
        bridges: Option<String>,
    },
    /// Runs the registered claims against brute force.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Comma-separated claim names; all registered claims by default.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        sample: usize,
        #[arg(long)]
        json: bool,
    },
}

fn emit(result: Result<(String, u8), Failure>) -> ExitCode {
    match result {
        Ok((text, code)) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
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
    let ok = |r: Result<String, Failure>| r.map(|t| (t, 0));
    emit(match cli.command {
        Command::Analyze { path, json } => ok(cmd_analyze(&path, json)),
        Command::Decompose { path, ears, json } => ok(cmd_decompose(&path, ears, json)),
        Command::Generate {
            family,
            params,
            seed,
            template,
            pieces,
            bridges,
        } => ok(cmd_generate(&GenerateArgs {
            family,
            params,
            seed,
            template,
            pieces,
            bridges,
        })),
        Command::Verify {
            max_n,
            claims,
            seed,
            sample,
            json,
        } => cmd_verify(
            &HarnessConfig {
                max_n,
                claims,
                seed,
                sample,
            },
            json,
        ),
    })
}
