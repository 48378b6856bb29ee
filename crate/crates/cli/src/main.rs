mod commands;
mod selftest;
mod spec;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "mvgate",
    version,
    about = "Finite-valued reversible and conservative logic gates"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// A gate given by name, family mnemonic or file.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GateArg {
    /// Named gate (F1, FREDKIN, ...) or family (f1:d=5, f2:d=4,l=1, m:d=3).
    #[arg(long)]
    pub gate: Option<String>,
    /// Path to a gate in mvgate format.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a gate table in mvgate format.
    Show {
        #[command(flatten)]
        gate: GateArg,
        /// Also split the gate into k control lines and per-symbol transitions.
        #[arg(long)]
        control: Option<usize>,
    },
    /// Print the property report of a gate.
    Verify {
        #[command(flatten)]
        gate: GateArg,
        /// List the input triples violating 0-/1-regularity, F-7 and F-8.
        #[arg(long)]
        violations: bool,
    },
    /// Landauer entropy accounting of a gate.
    Entropy {
        #[command(flatten)]
        gate: GateArg,
        /// Report entropies in bits instead of nats.
        #[arg(long)]
        bits: bool,
        /// Also list the spectral decomposition.
        #[arg(long)]
        spectrum: bool,
    },
    /// Reversibilize and conservativize a Boolean gate.
    Transform {
        #[command(flatten)]
        gate: GateArg,
        /// Print the reversible gate (same as `--emit reversible`).
        #[arg(long, conflicts_with_all = ["emit", "conservativize"])]
        reversibilize: bool,
        /// Print the conservative gate (same as `--emit conservative`).
        #[arg(long, conflicts_with = "emit")]
        conservativize: bool,
        /// Print a table: the reversible gate, the conservative gate or its inverse.
        #[arg(long, value_parser = ["reversible", "conservative", "inverse"])]
        emit: Option<String>,
    },
    /// Pin input lines to constants, or list every connective realized by pinning.
    Pin {
        #[command(flatten)]
        gate: GateArg,
        /// Pins such as `x2=1,x3=1/2` (values are fractions of L_d).
        #[arg(long, default_value = "")]
        set: String,
        /// Output lines to keep, such as `y1,y3` (default: all).
        #[arg(long)]
        keep: Option<String>,
        /// List the realized connectives instead.
        #[arg(long)]
        connectives: bool,
        /// Use the full catalog (adds EQV_L, TERTIUM and the indicators).
        #[arg(long)]
        full: bool,
    },
    /// Enumerate (n, d)-gates under constraints, or run an impossibility check.
    Search(commands::SearchArgs),
    /// Synthesize a normal-form expression for a truth function.
    Synth(commands::SynthArgs),
    /// Model-check algebraic structures.
    Algebra {
        #[command(subcommand)]
        command: commands::AlgebraCommand,
    },
    /// Run the built-in regression suite against the printed tables.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Show { gate, control } => commands::show(&gate, control, cli.json),
        Command::Verify { gate, violations } => commands::verify(&gate, violations, cli.json),
        Command::Entropy {
            gate,
            bits,
            spectrum,
        } => commands::entropy(&gate, bits, spectrum, cli.json),
        Command::Transform {
            gate,
            emit,
            reversibilize,
            conservativize,
        } => {
            let emit = match (reversibilize, conservativize) {
                (true, _) => Some("reversible"),
                (_, true) => Some("conservative"),
                _ => emit.as_deref(),
            };
            commands::transform(&gate, emit, cli.json)
        }
        Command::Pin {
            gate,
            set,
            keep,
            connectives,
            full,
        } => commands::pin(&gate, &set, keep.as_deref(), connectives, full, cli.json),
        Command::Search(args) => commands::search(&args, cli.json),
        Command::Synth(args) => commands::synth(&args, cli.json),
        Command::Algebra { command } => commands::algebra(&command, cli.json),
        Command::Selftest => selftest::run(cli.json),
    };
    match result {
        Ok(commands::Output { text, success }) => {
            print!("{text}");
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
