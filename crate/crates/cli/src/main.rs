use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use momangle_cli::commands::{self, CheckOptions, CohomologyOptions, PolyjoinOptions, Which};
use momangle_cli::report::Report;

/// Exact cohomology of moment-angle complexes and duality checks for
/// simplicial complexes.
#[derive(Parser)]
#[command(name = "momangle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bigraded cohomology table and Poincaré polynomial of Z_K.
    Cohomology {
        path: PathBuf,
        /// Also compute the homology of the full cellular chain complex and require agreement.
        #[arg(long)]
        direct_oracle: bool,
        /// Refuse complexes with more vertices than this.
        #[arg(long, value_name = "N")]
        max_m: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Duality checks: alexander, ghs, pd, gorenstein, or all of them.
    Check {
        which: CheckArg,
        path: PathBuf,
        /// Dimension for the alexander check (default: dim K).
        #[arg(long, value_name = "D", allow_negative_numbers = true)]
        dim: Option<isize>,
        #[arg(long, value_name = "N")]
        max_m: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Polyhedral join of a base complex with one pair file per base vertex.
    Polyjoin {
        base: PathBuf,
        pairs: Vec<PathBuf>,
        /// Treat each pair file as a single complex K_i with big side a full simplex.
        #[arg(long)]
        composition: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Alexander,
    Ghs,
    Pd,
    Gorenstein,
    All,
}

impl From<CheckArg> for Which {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Alexander => Which::Alexander,
            CheckArg::Ghs => Which::Ghs,
            CheckArg::Pd => Which::Pd,
            CheckArg::Gorenstein => Which::Gorenstein,
            CheckArg::All => Which::All,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                momangle_cli::EXIT_INPUT
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (result, json, label, input) = match &cli.command {
        Command::Cohomology {
            path,
            direct_oracle,
            max_m,
            json,
        } => {
            let opts = CohomologyOptions {
                direct_oracle: *direct_oracle,
                max_m: *max_m,
                json: *json,
            };
            (
                commands::cohomology(path, &opts),
                *json,
                "cohomology",
                path.display().to_string(),
            )
        }
        Command::Check {
            which,
            path,
            dim,
            max_m,
            json,
        } => {
            let which = Which::from(*which);
            let opts = CheckOptions {
                dim: *dim,
                max_m: *max_m,
                json: *json,
            };
            (
                commands::check(path, which, &opts),
                *json,
                which.as_str(),
                path.display().to_string(),
            )
        }
        Command::Polyjoin {
            base,
            pairs,
            composition,
            out,
        } => {
            let opts = PolyjoinOptions {
                composition: *composition,
                out: out.clone(),
            };
            (
                commands::polyjoin(base, pairs, &opts),
                false,
                "polyjoin",
                base.display().to_string(),
            )
        }
    };
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if json {
                print!("{}", Report::error(label, &input, &e.to_string()).render());
            }
            ExitCode::from(e.exit_code())
        }
    }
}
