use alloc::string::String;
use alloc::vec::Vec;

/// Errors surfaced by the analysis routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    /// A numeric input was rejected at construction (non-finite, wrong sign,
    /// inconsistent settings).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Strict validation failed; carries the names of the violated
    /// inequalities.
    #[error("assumption violated: {}", .0.join("; "))]
    AssumptionViolation(Vec<&'static str>),

    /// Integration produced NaN or infinity (usually a step-size problem).
    #[error("non-finite state at t = {t}")]
    NonFiniteState { t: f64 },

    /// The payoff-difference slope in the resource direction vanished where a
    /// fixed-point formula divides by it. Cannot occur for policies that keep
    /// the slope negative on the whole unit interval.
    #[error("degenerate denominator: dg/dn = 0 at the fixed point")]
    DegenerateDenominator,

    /// The policy lies on (or within tolerance of) a curve separating two
    /// analytic regimes, where the classification theorems and closed forms
    /// do not apply.
    #[error("boundary policy: {0}")]
    BoundaryPolicy(String),

    /// The policy lies outside the feasible region for the requested
    /// operation.
    #[error("policy outside feasible region: {0}")]
    OutOfRegion(String),
}
