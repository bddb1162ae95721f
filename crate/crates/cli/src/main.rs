//! `invtopos`: command-line access to inverse semigroups, their actions and
//! functors on `L(S)`.
//!
//! Reports go to stdout as JSON, a short summary to stderr. Exit status is 0
//! on success, 1 when a check fails and 2 on bad input.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "invtopos", version, about = "Inverse semigroups, partial actions and functors on L(S)")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a semigroup table.
    Validate {
        file: PathBuf,
        #[arg(long)]
        skip_associativity: bool,
    },
    /// Idempotents, order, D-classes and H-classes.
    Analyze { file: PathBuf },
    /// Build L(S) and print object and arrow counts.
    Logan {
        semigroup: PathBuf,
        /// Also write a Graphviz drawing of L(S).
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    #[command(subcommand)]
    Action(ActionCommand),
    #[command(subcommand)]
    Functor(FunctorCommand),
    #[command(subcommand)]
    Equiv(EquivCommand),
    /// Cosets of a closed inverse subsemigroup and their action.
    Cosets {
        semigroup: PathBuf,
        #[arg(long, value_name = "FILE")]
        subsemigroup: PathBuf,
    },
    /// Stabilizer and coset presentation of a strict transitive action.
    Schein { action: PathBuf },
    /// Filters in E(S) and in S.
    Filters {
        semigroup: PathBuf,
        #[arg(long, conflicts_with = "in_e")]
        in_s: bool,
        #[arg(long)]
        in_e: bool,
    },
    /// Compare torsor, universal and H = E(H)↑ over every closed H.
    TorsorCheck { semigroup: PathBuf },
    /// Classes of P ⊗ A.
    Tensor { presheaf: PathBuf, functor: PathBuf },
    /// Does - ⊗ A preserve the terminal object, products and equalizers?
    FlatnessSpotcheck { functor: PathBuf },
    #[command(subcommand)]
    Bundle(BundleCommand),
    /// Print or write canonical fixtures.
    Fixture(FixtureArgs),
    /// Run the full acceptance suite.
    Suite {
        #[arg(long, env = "INVTOPOS_SEED", default_value_t = invtopos_core::suite::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        fixtures_only: bool,
        /// Random instances per randomized criterion.
        #[arg(long, default_value_t = invtopos_core::suite::DEFAULT_RANDOM_INSTANCES)]
        random: usize,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum ActionCommand {
    /// Validate an action and report its properties with witnesses.
    Check {
        file: PathBuf,
        /// Comma-separated subset of strict,connected,transitive,free,torsor;
        /// the command fails if any of them does not hold.
        #[arg(long, value_delimiter = ',')]
        properties: Option<Vec<Property>>,
        #[arg(long)]
        allow_non_effective: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Property {
    Strict,
    Connected,
    Transitive,
    Free,
    Torsor,
}

#[derive(Subcommand)]
enum FunctorCommand {
    /// Torsion-free, directed, filtered and pullback-preserving, with witnesses.
    Classify { semigroup: PathBuf, functor: PathBuf },
}

#[derive(Subcommand)]
enum EquivCommand {
    /// Φ/Ψ round trips over the coset actions of S and random actions.
    Roundtrip {
        semigroup: PathBuf,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, env = "INVTOPOS_SEED", default_value_t = invtopos_core::suite::DEFAULT_SEED)]
        seed: u64,
    },
    /// The action Ψ(F) of a torsion-free functor.
    Psi { functor: PathBuf },
    /// The functor Φ(A) of an action.
    Phi { action: PathBuf },
}

#[derive(Subcommand)]
enum BundleCommand {
    /// Is the bundle principal?
    Check { bundle: PathBuf },
    /// The universal sheaf action of a principal bundle.
    Tau { bundle: PathBuf },
    /// The principal bundle of a universal sheaf action.
    Rho { sheaf_action: PathBuf },
    /// Round trips for every bundle and sheaf action JSON file in a directory.
    Roundtrip { dir: PathBuf },
}

#[derive(Args)]
struct FixtureArgs {
    /// Fixture names; see --list.
    names: Vec<String>,
    #[arg(long)]
    list: bool,
    /// Write every fixture.
    #[arg(long)]
    all: bool,
    /// Write `<name>.json` files here instead of printing.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
pub enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
