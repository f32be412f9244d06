//! Shared fixtures for unit tests.

use crate::model::{PolicyDeltas, PopulationSpec, SystemConfig};

/// Responsible population of the reference setup: policy (3, -0.5) with
/// abundant-state deltas (10, 6), theta = 0.75, alpha = 1.
pub(crate) fn baseline_pop1() -> PopulationSpec {
    PopulationSpec::new(PolicyDeltas::new(3.0, -0.5, 10.0, 6.0).unwrap(), 0.75, 1.0).unwrap()
}

/// Irresponsible population with the documented default deltas (-1, -1, 10, 6)
/// and theta = 0.75; `alpha2` is the consumption rate under study.
pub(crate) fn baseline_pop2(alpha2: f64) -> PopulationSpec {
    PopulationSpec::new(PolicyDeltas::new(-1.0, -1.0, 10.0, 6.0).unwrap(), 0.75, alpha2).unwrap()
}

pub(crate) fn baseline_config(alpha2: f64) -> SystemConfig {
    SystemConfig::new(baseline_pop1(), baseline_pop2(alpha2), 0.1).unwrap()
}

/// Pop1 with an arbitrary depleted-state policy, reference abundant-state
/// deltas and rates.
pub(crate) fn pop1_with_policy(d_sp0: f64, d_rt0: f64) -> PopulationSpec {
    PopulationSpec::new(PolicyDeltas::new(d_sp0, d_rt0, 10.0, 6.0).unwrap(), 0.75, 1.0).unwrap()
}
