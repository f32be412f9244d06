use ecogame_core::exploit::{optimal_consumption, resource_function, ExploitResult};
use ecogame_core::model::PopulationSpec;
use serde_json::Value;

use crate::error::CliError;
use crate::output::{exploit_json, fmt_f64};

pub const U_CURVE_HEADER: &str = "alpha2,R,U";

/// Sampling step of the utility-curve export.
pub const U_CURVE_STEP: f64 = 1e-3;

/// Solve the consumption problem for population 1's policy and sample the
/// utility curve on `[0, theta1 + 0.25]`.
pub fn run_optimize(pop1: &PopulationSpec) -> Result<(ExploitResult, Value, String), CliError> {
    let result = optimal_consumption(pop1)?;

    let mut csv = String::from(U_CURVE_HEADER);
    csv.push('\n');
    let steps = ((pop1.theta + 0.25) / U_CURVE_STEP).round() as usize;
    for k in 0..=steps {
        let alpha2 = k as f64 * U_CURVE_STEP;
        let r = resource_function(pop1, alpha2);
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(alpha2),
            fmt_f64(r),
            fmt_f64(alpha2 * r)
        ));
    }

    Ok((result, exploit_json(&result), csv))
}
