//! Command-line interface definition.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ecogame",
    version,
    about = "Two-population resource-game analysis: simulation, regime classification, \
             optimal consumption, and incentive sensitivities"
)]
pub struct Args {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Seed for random initial conditions (overrides the config).
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    /// Output file (or directory for `simulate`); overrides the config's
    /// output_path.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Stdout encoding for commands that support both (`optimize`).
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Whether assumption violations abort (strict) or only warn.
    #[arg(long, global = true, value_enum, default_value_t = ValidationFlag::Strict)]
    pub validation: ValidationFlag,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValidationFlag {
    Strict,
    Warn,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate trajectories and summarize their asymptotic outcomes.
    Simulate {
        /// Single initial condition as `x1,x2,n`.
        #[arg(long, value_name = "X1,X2,N", conflicts_with = "random_ics")]
        ic: Option<String>,
        /// Number of seeded random interior initial conditions.
        #[arg(long, value_name = "K")]
        random_ics: Option<usize>,
    },
    /// Analytic regime label and the fixed-point catalog.
    Classify {
        /// Apply the single-population classification to population 1 or 2.
        #[arg(long, value_name = "1|2", value_parser = clap::value_parser!(u8).range(1..=2))]
        single_pop: Option<u8>,
    },
    /// Optimal consumption rate for population 2, plus the utility curve.
    Optimize,
    /// Closed-form resource sensitivities: one policy, or a policy grid.
    Sensitivity {
        /// Policy grid as `sp0_min:sp0_max:steps,rt0_min:rt0_max:steps`.
        #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Sweep one or two parameters and tabulate regime and optimum per cell.
    Sweep {
        /// `name=lo:hi:steps` with name one of alpha2, d_sp0, d_rt0
        /// (repeat once for a two-parameter grid).
        #[arg(long, value_name = "NAME=LO:HI:STEPS", required = true)]
        vary: Vec<String>,
    },
}
