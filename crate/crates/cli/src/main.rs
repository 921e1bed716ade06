//! `resnet`: average effective resistance from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

pub type BoxResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INFINITE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "resnet", version, about = "Average effective resistance of unit-resistor multigraphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format; bound-sweep defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Resistance summary of an edge-list file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Report only the resistance between two vertices.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Option<Vec<usize>>,
    },
    /// Build a graph family and write its edge list.
    Construct {
        /// e.g. "family=star n=50 k=1"
        #[arg(long)]
        spec: String,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print the resistance summary of the built graph.
        #[arg(long)]
        analyze: bool,
        /// Local-resistance rooting, e.g. "ℓ=4 eps=0.05 p=auto".
        #[arg(long)]
        theorem64: Option<String>,
    },
    /// Root a graph at random sinks and report the best `B`.
    Root {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        sinks: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Sample distinct sinks instead of a multiset.
        #[arg(long)]
        without_replacement: bool,
        /// Greedy contract-and-add-leaf steps applied to the best rooting.
        #[arg(long)]
        improve: Option<usize>,
    },
    /// Every bound curve on a grid of average degrees.
    BoundSweep {
        #[arg(long)]
        alpha_lo: f64,
        #[arg(long)]
        alpha_hi: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive optimum over small multigraphs.
    Search {
        /// A, B or B_queen_bee.
        #[arg(long)]
        objective: String,
        /// Vertices (non-root vertices for rooted objectives).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Largest edge multiplicity; defaults to m.
        #[arg(long)]
        mult_cap: Option<u32>,
        /// Report enumeration stages on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// Run the verification battery.
    Verify {
        /// Comma-separated groups (golden, appendixA, appendixB, small,
        /// certificates, theorem2, lemma63, corollary65, theorem1).
        #[arg(long)]
        filter: Option<String>,
        /// Vertex count for the size-dependent groups.
        #[arg(long)]
        n: Option<usize>,
    },
}

fn configure_threads() -> BoxResult<()> {
    let Ok(raw) = std::env::var("RESNET_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("RESNET_THREADS must be a non-negative integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> BoxResult<u8> {
    configure_threads()?;
    let c = &cli.common;
    match cli.command {
        Command::Analyze { input, pair } => commands::analyze(c, &input, pair.as_deref()),
        Command::Construct {
            spec,
            output,
            analyze,
            theorem64,
        } => commands::construct(c, &spec, output.as_deref(), analyze, theorem64.as_deref()),
        Command::Root {
            input,
            output,
            sinks,
            trials,
            without_replacement,
            improve,
        } => commands::root(c, &input, output.as_deref(), sinks, trials, !without_replacement, improve),
        Command::BoundSweep {
            alpha_lo,
            alpha_hi,
            step,
            output,
        } => commands::bound_sweep(c, alpha_lo, alpha_hi, step, output.as_deref()),
        Command::Search {
            objective,
            n,
            m,
            mult_cap,
            progress,
        } => commands::search(c, &objective, n, m, mult_cap, progress),
        Command::Verify { filter, n } => commands::verify(c, filter.as_deref(), n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if matches!(e.downcast_ref::<resnet_core::Error>(), Some(resnet_core::Error::Disconnected)) {
                eprintln!("error: infinite average resistance (graph is disconnected)");
                return ExitCode::from(EXIT_INFINITE);
            }
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
