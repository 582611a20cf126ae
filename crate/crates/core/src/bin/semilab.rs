use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semigroup_lab::cli::{self, RunOptions};

#[derive(Parser)]
#[command(name = "semilab", version, about = "Numerical experiments on semigroups of weighted composition operators")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML or JSON config.
    Run {
        config: PathBuf,
        /// Output directory (overrides SEMILAB_OUT and the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Truncation degree for power series.
        #[arg(long)]
        degree: Option<usize>,
        /// ODE tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, short)]
        quiet: bool,
    },
    /// List registered experiments.
    List,
    /// Show what an experiment checks.
    Describe { id: String },
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.command {
        Command::List => {
            print!("{}", cli::list());
            ExitCode::SUCCESS
        }
        Command::Describe { id } => match cli::describe(&id) {
            Some(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("unknown experiment `{id}`");
                ExitCode::from(3)
            }
        },
        Command::Run { config, out, degree, tol, quiet } => {
            let opts = RunOptions { out, degree, tol, quiet };
            match cli::run_file(&config, &opts) {
                Ok(report) => {
                    if !quiet {
                        print!("{}", cli::summarize(&report));
                    }
                    ExitCode::from(report.exit_code as u8)
                }
                Err(e) => {
                    eprintln!("semilab: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
    }
}
