//! `dexlogic`: check, prove and sweep laws over theory files.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dexlogic", version, about = "Proof checking, bounded proving and law sweeps for theory files")]
pub struct Cli {
    /// Seed for every randomized step (mandatory); output is a function of the inputs and the seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every declared proof.
    CheckProof {
        file: PathBuf,
        /// Carrier bound for the model oracle of `cring` theories.
        #[arg(long, default_value_t = 7)]
        oracle_bound: usize,
    },
    /// Search for a countermodel to every declared sequent.
    Entail {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_model_size: usize,
    },
    /// Search for a proof of every declared sequent and print the proofs found.
    Prove {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Size of `exists-r` witnesses: term height or polynomial degree.
        #[arg(long, default_value_t = 1)]
        witness_budget: usize,
        #[arg(long, default_value_t = 7)]
        oracle_bound: usize,
    },
    /// Run a law suite over the declarations of the file.
    Laws {
        file: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        model_bound: usize,
        #[arg(long, default_value_t = 1)]
        atom_budget: usize,
        #[arg(long, default_value_t = 1)]
        mediator_budget: usize,
        /// Generated cases for the `cat` and `soundness` suites.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Run the soundness suite with the `exists-r` side condition disabled.
        #[arg(long)]
        fault_injection: bool,
    },
    /// Translate the sentences declared over the source of a morphism.
    Translate {
        file: PathBuf,
        #[arg(long)]
        morphism: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Dex,
    Morphism,
    Cat,
    Soundness,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { run::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = std::io::stdout().lock();
    match run::run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
