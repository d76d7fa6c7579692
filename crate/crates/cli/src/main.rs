use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qmf_cli::commands::{self, Output};
use qmf_cli::CliError;
use qmf_core::acceptance::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "qmf",
    version,
    about = "Exact computations with quasimodular forms and renormalized iterated primitives"
)]
struct Cli {
    /// Guaranteed q-order of printed series.
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized self-test suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the q-expansion of an expression.
    Expand { expr: String },
    /// Renormalized iterated primitive I(f1, ..., fn).
    Integrate {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Split a quasimodular form into D(g) + m * E2^(k-1) + tilde.
    Decompose {
        expr: String,
        /// Points allowed as poles of the complement, e.g. inf,i,rho,j=2.
        #[arg(long)]
        support: Option<String>,
    },
    /// Compare the dimension formula for the complement with a basis count.
    Dims {
        /// A weight or an inclusive range such as 2..24.
        #[arg(long, alias = "k-range", default_value = "2..24")]
        k: String,
        #[arg(long, default_value = "inf")]
        support: String,
    },
    /// Rank of the classes of forms modulo derivatives.
    Independence {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// List Lyndon words.
    Lyndon {
        /// Letters in increasing order.
        #[arg(long, default_value = "a,b", value_delimiter = ',')]
        alphabet: Vec<String>,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
    },
    /// Write a shuffle element as a polynomial in Lyndon words.
    Radford {
        /// For example "[b|a]" or "2*[a|b] - [b|a]".
        element: String,
        /// Letters in increasing order; defaults to the sorted letters of the input.
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Criterion ids to run; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
        /// Show the time spent on each criterion.
        #[arg(long)]
        timings: bool,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Expand { expr } => commands::expand(expr, cli.order),
        Command::Integrate { exprs } => commands::integrate(exprs, cli.order),
        Command::Decompose { expr, support } => {
            let support = support
                .as_deref()
                .map(commands::parse_support)
                .transpose()?;
            commands::decompose(expr, support.as_deref())
        }
        Command::Dims { k, support } => commands::dims(
            &commands::parse_k_range(k)?,
            &commands::parse_support(support)?,
        ),
        Command::Independence { exprs } => commands::independence(exprs),
        Command::Lyndon { alphabet, maxlen } => commands::lyndon(alphabet, *maxlen),
        Command::Radford { element, alphabet } => commands::radford(element, alphabet.as_deref()),
        Command::Selftest { only, timings } => commands::selftest(cli.seed, only, *timings),
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
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("valid JSON")
                );
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
