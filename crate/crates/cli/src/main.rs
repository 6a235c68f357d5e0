use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

/// Homology, dual Betti tables and Betti splittings of simplicial complexes.
///
/// Inputs are `.cplx`/JSON files, `-` for stdin, or `corpus:<name>`.
/// Exit status: 0 computed (verdict yes), 1 computed (verdict no), 2 usage or input error.
#[derive(Parser, Debug)]
#[command(name = "betti-split", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "BETTI_SPLIT_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Coefficient field, `Q` or `Fp:<prime>`; repeat for several fields.
    #[arg(long = "field", default_value = "Q")]
    pub fields: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector and reduced Betti numbers.
    Homology {
        input: String,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// Graded Betti table of the Alexander dual ideal.
    Betti {
        input: String,
        #[command(flatten)]
        fields: FieldArgs,
        /// Also list the multigraded entries.
        #[arg(long)]
        multigraded: bool,
    },
    /// Convert between a complex and its Alexander dual ideal.
    Dualize {
        input: String,
        /// Read the input as an ideal and print the complex.
        #[arg(long)]
        from_ideal: bool,
    },
    /// Test one standard decomposition.
    Check {
        input: String,
        /// Comma-separated 0-based facet indices of one part.
        #[arg(long, value_delimiter = ',', required = true)]
        split: Vec<usize>,
        #[arg(long, value_enum, default_value_t = CheckMode::Betti)]
        mode: CheckMode,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// Essential facets of top dimension.
    Essential {
        input: String,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// Orientability of a connected closed pseudomanifold.
    Orient { input: String },
    /// Search all decompositions for one with the given property.
    Enumerate {
        input: String,
        #[arg(long, value_enum, default_value_t = Goal::Trivial)]
        goal: Goal,
        #[command(flatten)]
        fields: FieldArgs,
        /// Largest facet count for exhaustive scans.
        #[arg(long, default_value_t = betti_split::enumerate::DEFAULT_BUDGET)]
        budget: usize,
        /// Disable the trivially-decomposable shortcut for `--goal betti`.
        #[arg(long)]
        no_prune: bool,
    },
    /// Splitting probabilities.
    Prob {
        input: String,
        #[arg(long, value_enum, default_value_t = ProbKind::Betti)]
        kind: ProbKind,
        /// Sample this many decompositions instead of scanning all of them.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = betti_split::enumerate::DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// Built-in triangulations.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Hom,
    Betti,
    BettiRecursive,
    Mv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Goal {
    Trivial,
    Hom,
    Betti,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbKind {
    Betti,
    Hom,
    Facet,
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Names and sizes of all entries.
    List,
    /// Expected invariants of an entry.
    Show { name: String },
    /// The entry's facet list in `.cplx` (or JSON) form.
    Dump { name: String },
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let out = commands::Output::new(cli.format);
    match cli.command {
        Command::Homology { input, fields } => commands::homology(&out, &input, &fields),
        Command::Betti {
            input,
            fields,
            multigraded,
        } => commands::betti(&out, &input, &fields, multigraded),
        Command::Dualize { input, from_ideal } => commands::dualize(&out, &input, from_ideal),
        Command::Check {
            input,
            split,
            mode,
            fields,
        } => commands::check(&out, &input, &split, mode, &fields),
        Command::Essential { input, fields } => commands::essential(&out, &input, &fields),
        Command::Orient { input } => commands::orient(&out, &input),
        Command::Enumerate {
            input,
            goal,
            fields,
            budget,
            no_prune,
        } => commands::enumerate(&out, &input, goal, &fields, budget, !no_prune),
        Command::Prob {
            input,
            kind,
            sample,
            seed,
            budget,
            fields,
        } => commands::prob(&out, &input, kind, sample, seed, budget, &fields),
        Command::Corpus { action } => match action {
            CorpusAction::List => commands::corpus_list(&out),
            CorpusAction::Show { name } => commands::corpus_show(&out, &name),
            CorpusAction::Dump { name } => commands::corpus_dump(&out, &name),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
