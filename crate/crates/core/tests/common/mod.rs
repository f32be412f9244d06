#![allow(dead_code)]
//! Seeded sampling helpers shared by the integration suites.

use ecogame_core::model::{PolicyDeltas, PopulationSpec, State, SystemConfig};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn baseline_pop1() -> PopulationSpec {
    pop1_with_policy(3.0, -0.5)
}

pub fn pop1_with_policy(d_sp0: f64, d_rt0: f64) -> PopulationSpec {
    PopulationSpec::new(PolicyDeltas::new(d_sp0, d_rt0, 10.0, 6.0).unwrap(), 0.75, 1.0).unwrap()
}

pub fn baseline_pop2(alpha2: f64) -> PopulationSpec {
    PopulationSpec::new(PolicyDeltas::new(-1.0, -1.0, 10.0, 6.0).unwrap(), 0.75, alpha2).unwrap()
}

pub fn baseline_config(alpha2: f64) -> SystemConfig {
    SystemConfig::new(baseline_pop1(), baseline_pop2(alpha2), 0.1).unwrap()
}

/// Depleted-state policy strictly inside the sustainable region for the given
/// rates and abundant-state deltas, with a small relative margin off both
/// rays.
pub fn sample_policy_in_v(
    rng: &mut ChaCha8Rng,
    theta: f64,
    alpha: f64,
    d_tr1: f64,
    d_ps1: f64,
) -> PolicyDeltas {
    let d_sp0 = rng.gen_range(0.2..5.0);
    let lo = (-(theta / alpha) * d_sp0).max(-d_tr1);
    let hi = (d_tr1 / d_ps1) * d_sp0;
    let f = rng.gen_range(0.02..0.98);
    let d_rt0 = lo + f * (hi - lo);
    PolicyDeltas::new(d_sp0, d_rt0, d_tr1, d_ps1).unwrap()
}

/// Population 1 with a sampled sustainable policy and the reference rates.
pub fn sample_pop1(rng: &mut ChaCha8Rng) -> PopulationSpec {
    let deltas = sample_policy_in_v(rng, 0.75, 1.0, 10.0, 6.0);
    PopulationSpec::new(deltas, 0.75, 1.0).unwrap()
}

/// A full config passing strict validation: random rates in (0, 2), random
/// abundant-state deltas, pop1 policy inside its region, pop2 strictly
/// irresponsible.
pub fn sample_config(rng: &mut ChaCha8Rng) -> SystemConfig {
    let theta1 = rng.gen_range(0.05..2.0);
    let alpha1 = rng.gen_range(0.05..2.0);
    let d_tr1 = rng.gen_range(1.0..12.0);
    let d_ps1 = rng.gen_range(1.0..12.0);
    let pop1 = PopulationSpec::new(
        sample_policy_in_v(rng, theta1, alpha1, d_tr1, d_ps1),
        theta1,
        alpha1,
    )
    .unwrap();

    // Abundant-state deltas large enough that the negative depleted-state
    // deltas keep the payoff slope negative.
    let d_sp0 = rng.gen_range(-3.0..-0.05);
    let d_rt0 = rng.gen_range(-3.0..-0.05);
    let pop2 = PopulationSpec::new(
        PolicyDeltas::new(d_sp0, d_rt0, rng.gen_range(3.5..12.0), rng.gen_range(3.5..12.0))
            .unwrap(),
        rng.gen_range(0.05..2.0),
        rng.gen_range(0.05..2.0),
    )
    .unwrap();

    SystemConfig::new(pop1, pop2, rng.gen_range(0.05..1.0)).unwrap()
}

pub fn sample_interior_state(rng: &mut ChaCha8Rng) -> State {
    State::new(
        rng.gen_range(0.05..0.95),
        rng.gen_range(0.05..0.95),
        rng.gen_range(0.05..0.95),
    )
    .unwrap()
}
