use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use adelic_roth::cli::run::EXIT_USAGE;
use adelic_roth::cli::{cmd_census, cmd_check};

#[derive(Parser)]
#[command(
    name = "adelic-roth",
    version,
    about = "Heights, Roth-type systems and gap-principle checks over Q and Q(t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the solutions of a configured system and check the gap principles on them.
    Census {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Directory for report.json and solutions.csv; the report goes to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one quantity: product-formula, height, liouville, hgap,
    /// column-bounding, params, bound or certificate.
    Check {
        name: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match cli.command {
        Command::Census { config, workers, out } => cmd_census(&config, workers, out.as_deref()),
        Command::Check { name, args } => {
            let out = cmd_check(&name, &args);
            if out.exit_code == EXIT_USAGE {
                eprint!("{}", out.text);
            } else {
                print!("{}", out.text);
            }
            out.exit_code
        }
    };
    ExitCode::from(code as u8)
}
