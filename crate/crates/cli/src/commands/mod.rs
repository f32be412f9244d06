mod classify;
mod optimize;
mod sensitivity;
mod simulate;
mod sweep;

pub use classify::run_classify;
pub use optimize::run_optimize;
pub use sensitivity::{run_sensitivity, SensitivityOutput};
pub use simulate::{run_simulate, TRAJECTORY_CSV_HEADER};
pub use sweep::run_sweep;

use crate::error::CliError;

/// Inclusive linear grid with `steps` points (`steps = 1` yields just `lo`).
pub(crate) fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(CliError::Config("grid needs at least one step".into()));
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Config(format!("non-finite grid bounds {lo}:{hi}")));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect())
}

/// Parse `lo:hi:steps`.
pub(crate) fn parse_range(spec: &str) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(CliError::Config(format!(
            "malformed range {spec:?} (expected lo:hi:steps)"
        )));
    };
    let parse_f = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Config(format!("bad number {s:?} in range {spec:?}")))
    };
    let steps = steps
        .parse::<usize>()
        .map_err(|_| CliError::Config(format!("bad step count in range {spec:?}")))?;
    Ok((parse_f(lo)?, parse_f(hi)?, steps))
}
