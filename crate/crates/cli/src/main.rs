mod commands;
mod markdown;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Parser, Debug)]
#[command(name = "toric-fine", version, about = "Fine interiors, canonical closures and surface singularities of lattice 3-polytopes")]
pub struct Cli {
    /// Output format [default: json; line report for `atlas verify`].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArg {
    /// Polytope JSON file, or `-` for stdin.
    #[arg(long, short)]
    pub input: PathBuf,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct FormatFlags {
    /// Shorthand for `--format json`.
    #[arg(long, conflicts_with = "md")]
    pub json: bool,
    /// Shorthand for `--format markdown`.
    #[arg(long)]
    pub md: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report for a polytope: Fine interior, invariants, singularities.
    Analyze(InputArg),
    /// Fine interior, support set, canonical closure and index.
    FineInterior(InputArg),
    /// The 49 polytopes with a Kanev or Todorov type Fine interior.
    #[command(subcommand)]
    Atlas(AtlasCommand),
    /// Splits the maximal polytope of a class into two simplices.
    Split { id: String },
    /// Double-cover invariants from refining the lattice (classes c, d, e).
    Cover { id: String },
    /// Drops the odd points and coarsens the lattice.
    Coarsen {
        id: String,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        #[arg(long, default_value_t = 2)]
        factor: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum AtlasCommand {
    List {
        #[command(flatten)]
        flags: FormatFlags,
    },
    Show {
        id: String,
        #[command(flatten)]
        flags: FormatFlags,
    },
    /// Classifies every entry, or the polytope given by `--input`.
    Classify {
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[command(flatten)]
        flags: FormatFlags,
    },
    /// Recomputes every row and runs the whole-atlas checks.
    Verify {
        /// JSON list of per-entry overrides of the expected values.
        #[arg(long)]
        expected: Option<PathBuf>,
        /// Also check the closure laws on this many random polytopes.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[command(flatten)]
        flags: FormatFlags,
    },
}

impl FormatFlags {
    pub fn resolve(&self, global: Option<Format>) -> Option<Format> {
        if self.md {
            Some(Format::Markdown)
        } else if self.json {
            Some(Format::Json)
        } else {
            global
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global().ok();
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
