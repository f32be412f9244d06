//! Analysis engine for a two-population consumption game over a shared,
//! degradable resource.
//!
//! One population follows a pro-environment incentive policy; the other always
//! prefers high consumption. Their strategy frequencies evolve by replicator
//! dynamics, coupled to a resource level driven by tipping-point dynamics.
//! The crate provides:
//!
//! - [`model`]: parameter containers, derived payoff coefficients, and
//!   validation of the standing feasibility assumptions.
//! - [`dynamics`]: the coupled ODE right-hand side, its Jacobian, fixed- and
//!   adaptive-step integration, and numeric outcome classification.
//! - [`equilibria`]: closed-form fixed-point enumeration with eigenvalues and
//!   analytic regime classification for the one- and two-population systems.
//! - [`exploit`]: the irresponsible population's optimal consumption rate
//!   (closed form plus a grid/golden-section oracle).
//! - [`sensitivity`]: closed-form sensitivities of the optimized resource to
//!   incentive perturbations of the responsible population's policy.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm` feature
//! instead of `std` on bare-metal targets.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("ecogame-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod dynamics;
pub mod equilibria;
mod error;
pub mod exploit;
mod math;
pub mod model;
pub mod sensitivity;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use model::{PolicyDeltas, PopulationSpec, State, SystemConfig};
