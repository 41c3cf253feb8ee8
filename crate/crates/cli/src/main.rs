//! `gamma`: evaluate tangle programs, compute Alexander invariants and run
//! the randomized verification suites.
//!
//! Exit status: 0 when everything checked passes, 1 when a check fails, 2 on
//! bad input or configuration (message on standard error).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gamma_calculus::verify::Suite;

#[derive(Parser, Debug)]
#[command(name = "gamma", version, about = "Exact Γ-calculus invariants of w-tangles, knots and links")]
pub struct Cli {
    /// Human-readable output (the default).
    #[arg(long, global = true, conflicts_with = "structured")]
    pub pretty: bool,
    /// Line-delimited JSON records.
    #[arg(long, global = true)]
    pub structured: bool,
    /// Identify every variable with t_<VAR> before printing.
    #[arg(long, global = true, value_name = "VAR")]
    pub var: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a tangle program and print its Γ-calculus element.
    Eval {
        #[command(flatten)]
        input: ProgramInput,
        /// Apply each run of stitches as one bulk stitch.
        #[arg(long)]
        bulk: bool,
    },
    /// Alexander polynomial of a long knot program, or of a braid closure.
    Alexander {
        #[command(flatten)]
        input: ProgramInput,
        #[command(flatten)]
        braid: BraidInput,
    },
    /// Δ_L(s) = s^(-w) ω_L(s²) of a long w-link program, or of the partial
    /// closure of a braid.
    LinkDelta {
        #[command(flatten)]
        input: ProgramInput,
        #[command(flatten)]
        braid: BraidInput,
    },
    /// Gassner matrix M^ρ of a braid with rightmost closures.
    Gassner {
        #[command(flatten)]
        braid: BraidInput,
        /// Number of rightmost closures.
        #[arg(long, default_value_t = 0)]
        closures: usize,
    },
    /// Fox-Milnor certificate for an up-down tangle, or for the double of a
    /// pure braid with rightmost closures.
    RibbonCheck {
        #[command(flatten)]
        input: ProgramInput,
        /// Half the number of strands of the up-down program.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        braid: BraidInput,
        /// Rightmost closures applied before doubling.
        #[arg(long, default_value_t = 0)]
        closures: usize,
    },
    /// Run a seeded randomized verification suite.
    Verify {
        /// One of r2, r3, oc, meta-assoc, order-independence, column-sum,
        /// polynomiality, gassner, unitarity, skein, trace, reversal,
        /// fox-milnor.
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
    },
}

#[derive(Args, Debug, Default)]
pub struct ProgramInput {
    /// Program file in the tangle DSL (`-` for standard input).
    pub file: Option<PathBuf>,
    /// Program text given inline instead of a file.
    #[arg(short = 'e', long = "program", conflicts_with = "file")]
    pub program: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct BraidInput {
    /// Braid word as signed generator indices, e.g. "1 -2 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    /// Number of strands of the braid.
    #[arg(long, requires = "braid")]
    pub strands: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
