// SPDX-License-Identifier: Apache-2.0

//! `phaselab`: build the two theories, verify their structure and decide
//! local-realist representability of their GHZ states.
//!
//! Exit codes: 0 success (feasible, no certificate), 3 negative verdict
//! (infeasible, certificate found, not a MUQT), 1 error or failed check.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phaselab_core::report::DEFAULT_SEED;
use phaselab_core::theories::TheoryName;

#[derive(Parser, Debug)]
#[command(name = "phaselab", version, about = "Exact stabiliser vs toy-theory comparison")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Theory to operate on.
    #[arg(long, global = true, default_value = "stab", value_parser = parse_theory)]
    pub theory: TheoryName,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "PHASELAB_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

fn parse_theory(s: &str) -> Result<TheoryName, String> {
    s.parse().map_err(|e: phaselab_core::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check for both theories and print the comparison report.
    Report {
        /// Write the JSON report here and its text rendering next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock runtime (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        /// Random diagrams per boundary shape in the spider check.
        #[arg(long, default_value_t = 20)]
        spider_trials: usize,
        /// Skip the three-system state count.
        #[arg(long)]
        skip_arity_three: bool,
    },
    /// Theory construction and enumeration.
    Theory {
        #[command(subcommand)]
        action: TheoryAction,
    },
    /// Axiom report, eigenstates and unbiased states of each observable.
    Observables,
    /// Phase group of one observable.
    PhaseGroup {
        #[arg(long, default_value = "Z")]
        observable: String,
    },
    /// GHZ state of one observable and its axioms.
    Ghz {
        #[arg(long, default_value = "Z")]
        observable: String,
    },
    /// Concrete GHZ correlation table and the one forced by the phase group.
    Correlations,
    /// Local hidden-variable feasibility of the GHZ state.
    Lhv {
        #[arg(long, value_enum, default_value_t = Mode::Prob)]
        mode: Mode,
        /// Solve over site-permutation orbits.
        #[arg(long)]
        symmetry: bool,
    },
    /// GF(2) parity certificate against local realism.
    Mermin,
    /// Random connected diagrams against the canonical spider.
    SpiderTest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        arity: u32,
        /// Observable label; all observables when omitted.
        #[arg(long)]
        observable: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum TheoryAction {
    /// Generators, comultiplication and counit.
    Build,
    /// States reachable from the counit's dagger.
    States {
        #[arg(long, default_value_t = 1)]
        arity: u32,
        #[arg(long, default_value_t = phaselab_core::theories::DEFAULT_DEPTH_BOUND)]
        depth: usize,
    },
    /// Enumerated observables.
    Observables,
    /// Mutually unbiased qubit theory conditions.
    VerifyMuqt,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Prob,
    Poss,
}

/// Output value and exit code of a command.
pub struct Outcome {
    pub value: serde_json::Value,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("serializable"));
            } else {
                print!("{}", phaselab_core::report::render_text(&out.value));
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Report { out, timing, spider_trials, skip_arity_three } => {
            commands::report(g, out.as_deref(), *timing, *spider_trials, !skip_arity_three)
        }
        Command::Theory { action } => match action {
            TheoryAction::Build => commands::theory_build(g),
            TheoryAction::States { arity, depth } => commands::theory_states(g, *arity, *depth),
            TheoryAction::Observables => commands::theory_observables(g),
            TheoryAction::VerifyMuqt => commands::verify_muqt(g),
        },
        Command::Observables => commands::observables(g),
        Command::PhaseGroup { observable } => commands::phase_group(g, observable),
        Command::Ghz { observable } => commands::ghz(g, observable),
        Command::Correlations => commands::correlations(g),
        Command::Lhv { mode, symmetry } => commands::lhv(g, *mode, *symmetry),
        Command::Mermin => commands::mermin(g),
        Command::SpiderTest { trials, arity, observable } => {
            commands::spider_test(g, *trials, *arity, observable.as_deref())
        }
    }
}
