use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ecogame_core::dynamics::{classify_trajectory, integrate, IntegratorSettings, Trajectory};
use ecogame_core::model::{State, SystemConfig};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::error::CliError;
use crate::output::{fmt_f64, simulation_summary_entry};

pub const TRAJECTORY_CSV_HEADER: &str = "t,x1,x2,n";

/// Integrate one or more initial conditions, write one CSV per trajectory
/// plus `summary.json` into `out_dir`, and return the summary document.
pub fn run_simulate(
    system: &SystemConfig,
    settings: &IntegratorSettings,
    ic: Option<&str>,
    random_ics: Option<usize>,
    seed: u64,
    out_dir: &Path,
) -> Result<Value, CliError> {
    let ics: Vec<[f64; 3]> = match (ic, random_ics) {
        (Some(spec), None) => vec![parse_ic(spec)?],
        (None, Some(k)) => {
            if k == 0 {
                return Err(CliError::Config("--random-ics needs at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k)
                .map(|_| {
                    [
                        rng.gen_range(0.05..0.95),
                        rng.gen_range(0.05..0.95),
                        rng.gen_range(0.05..0.95),
                    ]
                })
                .collect()
        }
        (None, None) => {
            return Err(CliError::Config(
                "simulate needs either --ic or --random-ics".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap marks the flags as conflicting"),
    };

    let states: Vec<State> = ics
        .iter()
        .map(|&[x1, x2, n]| State::new(x1, x2, n).map_err(CliError::from))
        .collect::<Result<_, _>>()?;

    let trajectories: Vec<Trajectory> = states
        .par_iter()
        .map(|s0| integrate(system, s0, settings).map_err(CliError::from))
        .collect::<Result<_, _>>()?;

    fs::create_dir_all(out_dir)?;
    let mut entries = Vec::with_capacity(trajectories.len());
    for (index, (ic, trajectory)) in ics.iter().zip(&trajectories).enumerate() {
        let file_name = format!("trajectory_{index:03}.csv");
        write_trajectory_csv(&out_dir.join(&file_name), trajectory)?;
        let classification = classify_trajectory(trajectory, system);
        entries.push(simulation_summary_entry(
            ic,
            &classification,
            &trajectory.final_state().to_array(),
            trajectory.final_time(),
            &file_name,
        ));
    }

    let summary = Value::Array(entries);
    fs::write(
        out_dir.join("summary.json"),
        format!("{}\n", serde_json::to_string_pretty(&summary)?),
    )?;
    Ok(summary)
}

fn parse_ic(spec: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    let [x1, x2, n] = parts.as_slice() else {
        return Err(CliError::Config(format!(
            "malformed initial condition {spec:?} (expected x1,x2,n)"
        )));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Config(format!("bad number {s:?} in initial condition")))
    };
    Ok([parse(x1)?, parse(x2)?, parse(n)?])
}

fn write_trajectory_csv(path: &PathBuf, trajectory: &Trajectory) -> Result<(), CliError> {
    let file = fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    writeln!(w, "{TRAJECTORY_CSV_HEADER}")?;
    for (t, s) in trajectory.times.iter().zip(&trajectory.states) {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(*t),
            fmt_f64(s.x1()),
            fmt_f64(s.x2()),
            fmt_f64(s.n())
        )?;
    }
    Ok(())
}
