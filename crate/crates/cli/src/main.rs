//! Command-line front end for sparse hypergraph experiments.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status: 0 success,
//! 1 verification or precondition failure, 2 budget exhaustion, 64 usage error.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, Outcome};
use config::Params;

const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "sparse-hyper", version, about = "Sparse r-uniform hypergraph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    params: Params,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an input hypergraph against G(v,e) (--v --e) or the (k,e) system (--k --e [--t]).
    Check,
    /// Delete edges through (k-1)-subsets of codegree 1..e-1 (--k --e [--order --seed]).
    Peel,
    /// Run the bad-configuration deletion loop (--t --e --k); csv prints the trace.
    Extract,
    /// Exact maximum edge count on --n vertices under G(v,e) or the (k,e) system.
    Solve,
    /// Greedy packing free of G(tr-2(t-1), t) for t = 2..=e (--n --e [--seed --order]).
    Construct,
    /// Known limits, growth exponents or loop constants (--table).
    Limits,
    /// Exact values along the f >= f^(e-1) >= ... >= f^(2) chain (--n --e --k).
    Chain,
}

fn run(cli: &Cli) -> Outcome {
    let p = &cli.params;
    match cli.command {
        Command::Check => commands::check(p),
        Command::Peel => commands::peel(p),
        Command::Extract => commands::extract(p),
        Command::Solve => commands::solve(p),
        Command::Construct => commands::construct(p),
        Command::Limits => commands::limits(p),
        Command::Chain => commands::chain(p),
    }
}

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = cli.params.merge_config() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Some(threads) = cli.params.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        // The pool may already exist if this is called twice; that is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli) {
        Ok((data, status)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(data.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(status.code())
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
