//! Command-line front end over the analysis engine: config parsing, the five
//! analysis commands, and deterministic CSV/JSON emission.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::fs;
use std::path::PathBuf;

use ecogame_core::model::{validate, SystemConfig, ValidationMode};

use cli::{Args, Command, OutputFormat, ValidationFlag};
use commands::SensitivityOutput;
pub use error::CliError;

/// Honor `ECOGAME_THREADS` as a cap on worker parallelism. Call once at
/// startup.
pub fn init_thread_pool() {
    if let Some(n) = std::env::var("ECOGAME_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn check_assumptions(system: &SystemConfig, flag: ValidationFlag) -> Result<(), CliError> {
    let mode = match flag {
        ValidationFlag::Strict => ValidationMode::Strict,
        ValidationFlag::Warn => ValidationMode::Warn,
    };
    let report = validate(system, mode)?;
    for name in report.violations.iter().chain(&report.boundary) {
        eprintln!("warning: assumption violated: {name}");
    }
    Ok(())
}

pub fn run(args: Args) -> Result<(), CliError> {
    let config_path = args
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let run_config = config::RunConfig::load(config_path)?;
    let system = run_config.system()?;

    // Single-population classification is meaningful outside the
    // two-population assumptions (e.g. oscillating-regime policies), so it
    // only warns.
    let single_pop_classify = matches!(
        args.command,
        Command::Classify { single_pop: Some(_) }
    );
    if single_pop_classify {
        check_assumptions(&system, ValidationFlag::Warn)?;
    } else {
        check_assumptions(&system, args.validation)?;
    }

    let seed = args.seed.unwrap_or(run_config.seed);
    let base_dir = run_config
        .output_path
        .clone()
        .unwrap_or_else(|| PathBuf::from("."));

    match &args.command {
        Command::Simulate { ic, random_ics } => {
            let settings = run_config.integrator()?;
            let out_dir = args.out.clone().unwrap_or(base_dir);
            let summary = commands::run_simulate(
                &system,
                &settings,
                ic.as_deref(),
                *random_ics,
                seed,
                &out_dir,
            )?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Classify { single_pop } => {
            let value = commands::run_classify(&system, *single_pop)?;
            let text = serde_json::to_string_pretty(&value)?;
            if let Some(path) = &args.out {
                fs::write(path, format!("{text}\n"))?;
            }
            println!("{text}");
        }
        Command::Optimize => {
            let (_result, json, csv) = commands::run_optimize(&system.pop1)?;
            let curve_path = args
                .out
                .clone()
                .unwrap_or_else(|| base_dir.join("u_curve.csv"));
            if let Some(parent) = curve_path.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)?;
                }
            }
            fs::write(&curve_path, &csv)?;
            match args.format {
                OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&json)?),
                OutputFormat::Csv => print!("{csv}"),
            }
        }
        Command::Sensitivity { grid } => {
            match commands::run_sensitivity(&system.pop1, grid.as_deref())? {
                SensitivityOutput::Single(json) => {
                    let text = serde_json::to_string_pretty(&json)?;
                    if let Some(path) = &args.out {
                        fs::write(path, format!("{text}\n"))?;
                    }
                    println!("{text}");
                }
                SensitivityOutput::Grid(csv) => match &args.out {
                    Some(path) => fs::write(path, &csv)?,
                    None => print!("{csv}"),
                },
            }
        }
        Command::Sweep { vary } => {
            let csv = commands::run_sweep(&system, vary)?;
            match &args.out {
                Some(path) => fs::write(path, &csv)?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}
