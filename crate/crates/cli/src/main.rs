use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use semiweyl_cli::{run_config_file, Command, Overrides};

#[derive(Parser, Debug)]
#[command(name = "semiweyl", version, about = "Peter-Weyl and semicompleteness experiments")]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random test functions and weights (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Membership tolerance (overrides `tolerances.membership`).
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let ov = Overrides { out: args.out, seed: args.seed, tol: args.tol };
    match run_config_file(args.command, &args.config, &ov) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("semiweyl: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
