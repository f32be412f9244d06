use ecogame_core::equilibria::{
    classify_single_population, classify_two_population, enumerate_fixed_points,
};
use ecogame_core::model::SystemConfig;
use serde_json::Value;

use crate::error::CliError;
use crate::output::{regime_single_pop_json, regime_two_pop_json};

/// Analytic classification: the full two-population regime with the
/// fixed-point catalog, or a single population in isolation.
pub fn run_classify(system: &SystemConfig, single_pop: Option<u8>) -> Result<Value, CliError> {
    match single_pop {
        None => {
            let label = classify_two_population(system)?;
            let records = enumerate_fixed_points(system);
            Ok(regime_two_pop_json(&label, &records))
        }
        Some(which) => {
            let pop = match which {
                1 => &system.pop1,
                2 => &system.pop2,
                other => {
                    return Err(CliError::Config(format!(
                        "--single-pop must be 1 or 2, got {other}"
                    )))
                }
            };
            let label = classify_single_population(pop)?;
            Ok(regime_single_pop_json(&label))
        }
    }
}
