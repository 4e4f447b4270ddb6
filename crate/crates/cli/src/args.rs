use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use horikawa_core::catalog::Perturbation;
use serde::{Deserialize, Serialize};

use crate::scenario::CommandSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

/// Exact divisor calculus for surfaces on the Horikawa lines.
#[derive(Debug, Parser)]
#[command(name = "horikawa", version, about)]
pub struct Cli {
    /// Output format [default: text]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// JSON scenario file with a command and assumption overrides
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissibility and connected components for (K^2, chi)
    Classify {
        #[arg(long = "k2", allow_negative_numbers = true)]
        k2: i64,
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Run one of the explicit constructions
    Construct {
        #[command(subcommand)]
        variant: ConstructVariant,
    },
    /// Tabulate both lines over chi = start..=chi-max
    Enumerate {
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
        #[arg(long, allow_negative_numbers = true)]
        chi_max: i64,
    },
    /// Rebuild every construction and check every identity
    VerifyPaper {
        #[arg(long, default_value_t = 30)]
        chi_max: i64,
        #[arg(long, default_value_t = 6)]
        k_max: i64,
        /// Corrupt one coefficient (pipeline:class:slot) to test the harness
        #[arg(long, hide = true)]
        inject_fault: Option<Perturbation>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructVariant {
    /// Triple cover with K^2 = 2chi - 6
    #[command(name = "component-I")]
    ComponentOne {
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Double cover with (K^2, chi) = (8k, 4k + 3)
    #[command(name = "component-II")]
    ComponentTwo {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Stable surface with K^2 = 2chi - 5, or 2chi - 6 + epsilon with --epsilon
    Stable {
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<i64>,
    },
}

impl From<Command> for CommandSpec {
    fn from(command: Command) -> Self {
        match command {
            Command::Classify { k2, chi } => CommandSpec::Classify { k_squared: k2, chi },
            Command::Construct { variant: ConstructVariant::ComponentOne { chi } } => CommandSpec::ConstructComponentOne { chi },
            Command::Construct { variant: ConstructVariant::ComponentTwo { k } } => CommandSpec::ConstructComponentTwo { k },
            Command::Construct { variant: ConstructVariant::Stable { chi, epsilon } } => CommandSpec::ConstructStable { chi, epsilon },
            Command::Enumerate { chi, chi_max } => CommandSpec::Enumerate { chi, chi_max },
            Command::VerifyPaper { chi_max, k_max, inject_fault } => CommandSpec::VerifyPaper { chi_max, k_max, inject_fault },
        }
    }
}
