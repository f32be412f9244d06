use ecogame_core::model::PopulationSpec;
use ecogame_core::sensitivity::{resource_sensitivities, sensitivity_ratio_map};
use serde_json::Value;

use crate::commands::{linspace, parse_range};
use crate::error::CliError;
use crate::output::{sensitivity_grid_csv, sensitivity_json};

/// Either one policy's sensitivity report (JSON) or a policy-grid map (CSV).
pub enum SensitivityOutput {
    Single(Value),
    Grid(String),
}

pub fn run_sensitivity(
    pop1: &PopulationSpec,
    grid: Option<&str>,
) -> Result<SensitivityOutput, CliError> {
    match grid {
        None => {
            let report = resource_sensitivities(pop1)?;
            Ok(SensitivityOutput::Single(sensitivity_json(&report)))
        }
        Some(spec) => {
            let (sp0_spec, rt0_spec) = spec.split_once(',').ok_or_else(|| {
                CliError::Config(format!(
                    "malformed grid {spec:?} (expected sp0_min:sp0_max:steps,rt0_min:rt0_max:steps)"
                ))
            })?;
            let (lo, hi, steps) = parse_range(sp0_spec)?;
            let sp0 = linspace(lo, hi, steps)?;
            let (lo, hi, steps) = parse_range(rt0_spec)?;
            let rt0 = linspace(lo, hi, steps)?;
            let cells = sensitivity_ratio_map(pop1, &sp0, &rt0);
            Ok(SensitivityOutput::Grid(sensitivity_grid_csv(&cells)))
        }
    }
}
