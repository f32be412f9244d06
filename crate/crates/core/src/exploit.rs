//! The irresponsible population's consumption problem: choose the degradation
//! rate `alpha2 >= 0` to maximize `U(alpha2) = alpha2 * R(alpha2)`, where `R`
//! is the asymptotic resource level left by the dynamics.
//!
//! Both routes to the optimum are provided: the closed form (the product) and
//! a grid search refined by golden section (the oracle used in tests and
//! shipped for reproducibility).

use crate::math;
use crate::model::PopulationSpec;
use crate::Error;

/// Which part of the optimal-consumption characterization produced the
/// result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Maximal consumption `alpha2* = theta1` is optimal. The realized
    /// resource is the optimistic end of an initial-condition-dependent
    /// range.
    Theorem3a,
    /// Interior optimum with a positive mutual-cooperation delta.
    Theorem3bCase1,
    /// Interior optimum with `d_rt0 <= 0` (utility support ends before
    /// `theta1`).
    Theorem3bCase2,
}

/// Solution of the consumption problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExploitResult {
    pub alpha2_star: f64,
    /// Resource level `R(alpha2*)`.
    pub resource: f64,
    /// Utility `U(alpha2*) = alpha2* * R(alpha2*)`.
    pub utility: f64,
    pub branch: Branch,
    /// Upper end of the interval where `U > 0`.
    pub support_upper: f64,
}

/// Asymptotic resource level when the other population consumes at rate
/// `alpha2`:
///
/// - the sustained level `n*(alpha2)` while the rate stays below the
///   restoration rate and the policy keeps the sustained point inside the
///   cube;
/// - at `alpha2 = theta1` exactly (with `d_rt0 > 0`) the highest point of the
///   reachable range, `d_rt0 / (d_rt0 + d_tr1)`, making `R` left-continuous;
/// - zero otherwise.
pub fn resource_function(pop1: &PopulationSpec, alpha2: f64) -> f64 {
    let d = &pop1.deltas;
    if alpha2 > pop1.theta {
        return 0.0;
    }
    let threshold = (alpha2 - pop1.theta) / (pop1.alpha + alpha2) * d.d_sp0;
    if threshold <= d.d_rt0 && d.d_rt0 <= (d.d_tr1 / d.d_ps1) * d.d_sp0 {
        let g = pop1.coefficients();
        let x1 = (pop1.alpha + alpha2) / (pop1.alpha + pop1.theta);
        -(g.b * x1 + g.d) / g.dg_dn(x1)
    } else {
        0.0
    }
}

/// Consumption utility `U(alpha2) = alpha2 * R(alpha2)`.
pub fn utility(pop1: &PopulationSpec, alpha2: f64) -> f64 {
    alpha2 * resource_function(pop1, alpha2)
}

/// The interval `[0, s]` outside of which `U` vanishes: `s = theta1` for
/// `d_rt0 > 0`, otherwise the rate at which the sustained level reaches zero.
pub fn support_of_utility(pop1: &PopulationSpec) -> (f64, f64) {
    let d = &pop1.deltas;
    if d.d_rt0 > 0.0 {
        (0.0, pop1.theta)
    } else {
        (
            0.0,
            (d.d_sp0 * pop1.theta + d.d_rt0 * pop1.alpha) / (d.d_sp0 - d.d_rt0),
        )
    }
}

/// The threshold value of `d_rt0` separating the maximal-consumption branch
/// from the interior-optimum branch: the positive root of the quadratic in
/// `d_rt0` at which `U'(theta1) = 0`.
///
/// Evaluated in conjugate form, exact at `d_sp0 = 0`.
pub fn threshold_c(pop1: &PopulationSpec) -> f64 {
    let d = &pop1.deltas;
    let abar = pop1.alpha / (pop1.alpha + pop1.theta);
    let q = (1.0 - abar) * d.d_ps1 + d.d_tr1;
    let r = (1.0 - abar) * d.d_tr1 * d.d_sp0;
    2.0 * r / (q + math::sqrt(q * q + 4.0 * r))
}

fn theorem3_bounds(pop1: &PopulationSpec) -> (f64, f64) {
    let d = &pop1.deltas;
    let lower = (-(pop1.theta / pop1.alpha) * d.d_sp0).max(-d.d_tr1);
    let upper = (d.d_tr1 / d.d_ps1) * d.d_sp0;
    (lower, upper)
}

/// Closed-form solution of the consumption problem.
///
/// Policies with `d_rt0` at or above the threshold curve take the maximal
/// rate `theta1`; below it the interior stationary point of `U`. The interior
/// formulas are evaluated in a conjugate form that stays finite when the
/// bilinear coefficient `a1` vanishes and avoids the cancellation the naive
/// root formula suffers for near-threshold policies.
pub fn optimal_consumption(pop1: &PopulationSpec) -> Result<ExploitResult, Error> {
    let d = &pop1.deltas;
    let (lower, upper) = theorem3_bounds(pop1);
    if !(d.d_sp0 > 0.0) || !(lower <= d.d_rt0) || !(d.d_rt0 < upper) {
        return Err(Error::OutOfRegion(alloc::format!(
            "policy ({}, {}) outside the feasible region [{lower}, {upper})",
            d.d_sp0,
            d.d_rt0
        )));
    }
    let support_upper = support_of_utility(pop1).1;
    let c = threshold_c(pop1);

    if d.d_rt0 >= c {
        let resource = d.d_rt0 / (d.d_rt0 + d.d_tr1);
        return Ok(ExploitResult {
            alpha2_star: pop1.theta,
            resource,
            utility: pop1.theta * resource,
            branch: Branch::Theorem3a,
            support_upper,
        });
    }

    let g = pop1.coefficients();
    let abar = pop1.alpha / (pop1.alpha + pop1.theta);
    let slope = g.dg_dn(abar);
    let g0 = g.b * abar + g.d;
    let y = d.d_tr1 * d.d_sp0 - d.d_rt0 * d.d_ps1;
    debug_assert!(y > 0.0, "Y must be positive below the threshold curve");
    debug_assert!(g.b * slope > 0.0, "b1 and dg1/dn share their sign here");
    let phi = math::sqrt(y / (g.b * slope));

    let alpha2_star = (pop1.alpha + pop1.theta) * g0 / (-g.b * (1.0 + phi));
    let resource = g0 / (-slope * (1.0 + phi));
    Ok(ExploitResult {
        alpha2_star,
        resource,
        utility: alpha2_star * resource,
        branch: if d.d_rt0 > 0.0 {
            Branch::Theorem3bCase1
        } else {
            Branch::Theorem3bCase2
        },
        support_upper,
    })
}

/// Independent maximizer of [`utility`]: argmax over the grid
/// `{0, grid_step, ..., theta1}` (ties toward smaller `alpha2`), refined by
/// golden-section search on the bracketing interval. Returns
/// `(alpha2, utility)`.
pub fn brute_force_optimum(
    pop1: &PopulationSpec,
    grid_step: f64,
) -> Result<(f64, f64), Error> {
    if !grid_step.is_finite() || grid_step <= 0.0 {
        return Err(Error::InvalidParameter(alloc::format!(
            "grid_step must be positive and finite, got {grid_step}"
        )));
    }
    let theta = pop1.theta;
    let count = (theta / grid_step) as usize;
    let point = |k: usize| -> f64 {
        let v = k as f64 * grid_step;
        if v > theta || k == count + 1 {
            theta
        } else {
            v
        }
    };
    let last = if (count as f64) * grid_step < theta {
        count + 1
    } else {
        count
    };

    let mut best_k = 0;
    let mut best_u = utility(pop1, 0.0);
    for k in 1..=last {
        let u = utility(pop1, point(k));
        if u > best_u {
            best_u = u;
            best_k = k;
        }
    }

    let lo = point(best_k.saturating_sub(1));
    let hi = point((best_k + 1).min(last));
    let (x, u) = golden_section_max(|a| utility(pop1, a), lo, hi, 1e-12);
    // Ties go to the grid argmax, which already prefers the smaller rate.
    if u > best_u {
        Ok((x, u))
    } else {
        Ok((point(best_k), best_u))
    }
}

/// Golden-section maximization on `[lo, hi]`; assumes unimodality, which the
/// concavity of `U` on its support guarantees.
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.6180339887498949;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let x = (lo + hi) / 2.0;
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{baseline_pop1, pop1_with_policy};

    #[test]
    fn resource_function_hand_values() {
        let pop1 = baseline_pop1();
        assert!((resource_function(&pop1, 0.0) - 7.0 / 65.0).abs() < 1e-15);
        assert_eq!(resource_function(&pop1, 0.8), 0.0);
        // Degenerate rate with positive mutual delta takes the optimistic
        // top of the range.
        let steep = pop1_with_policy(3.0, 2.0);
        assert!((resource_function(&steep, 0.75) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn utility_vanishes_outside_support() {
        let pop1 = baseline_pop1();
        assert_eq!(utility(&pop1, 0.0), 0.0);
        assert_eq!(utility(&pop1, 0.6), 0.0, "0.6 is beyond the support end 0.5");
        assert!(utility(&pop1, 0.25) > 0.0);
    }

    #[test]
    fn support_hand_values() {
        assert_eq!(support_of_utility(&baseline_pop1()), (0.0, 0.5));
        assert_eq!(support_of_utility(&pop1_with_policy(3.0, 2.0)), (0.0, 0.75));
        assert_eq!(support_of_utility(&pop1_with_policy(3.0, -2.25)), (0.0, 0.0));
    }

    #[test]
    fn threshold_value_and_degenerate_policy() {
        let c = threshold_c(&baseline_pop1());
        assert!((c - 0.9508143668079656).abs() < 1e-12, "C = {c}");
        assert_eq!(threshold_c(&pop1_with_policy(0.0, -0.1)), 0.0);
    }

    #[test]
    fn threshold_stays_below_the_upper_ray() {
        // Needed for the maximal-consumption branch to be non-empty.
        for i in 0..100 {
            let d_sp0 = 0.05 + 0.07 * i as f64;
            let pop1 = pop1_with_policy(d_sp0, 0.0);
            assert!(threshold_c(&pop1) < (10.0 / 6.0) * d_sp0, "d_sp0 = {d_sp0}");
        }
    }

    #[test]
    fn interior_optimum_reference_values() {
        let r = optimal_consumption(&baseline_pop1()).unwrap();
        assert_eq!(r.branch, Branch::Theorem3bCase2);
        assert!((r.alpha2_star - 0.24904578762562969).abs() < 1e-12);
        assert!((r.resource - 0.053640631180904856).abs() < 1e-12);
        assert!((r.utility - 0.013358973241184361).abs() < 1e-12);
        assert_eq!(r.support_upper, 0.5);
        assert!((r.utility - r.alpha2_star * r.resource).abs() < 1e-12);
    }

    #[test]
    fn maximal_consumption_branch_values() {
        let r = optimal_consumption(&pop1_with_policy(3.0, 2.0)).unwrap();
        assert_eq!(r.branch, Branch::Theorem3a);
        assert_eq!(r.alpha2_star, 0.75);
        assert!((r.resource - 1.0 / 6.0).abs() < 1e-12);
        assert!((r.utility - 0.125).abs() < 1e-12);
    }

    #[test]
    fn branch_formulas_agree_at_the_seam() {
        let pop1 = baseline_pop1();
        let c = threshold_c(&pop1);
        let seam = pop1_with_policy(3.0, c);
        let r = optimal_consumption(&seam).unwrap();
        assert_eq!(r.branch, Branch::Theorem3a);
        assert_eq!(r.alpha2_star, 0.75);

        // Evaluate the interior-branch formulas at the same policy.
        let g = seam.coefficients();
        let abar = 1.0 / 1.75;
        let slope = g.dg_dn(abar);
        let g0 = g.b * abar + g.d;
        let y = 10.0 * 3.0 - c * 6.0;
        let phi = crate::math::sqrt(y / (g.b * slope));
        let alpha_b = 1.75 * g0 / (-g.b * (1.0 + phi));
        let resource_b = g0 / (-slope * (1.0 + phi));
        assert!((alpha_b - r.alpha2_star).abs() <= 1e-9);
        assert!((resource_b - r.resource).abs() <= 1e-9);
    }

    #[test]
    fn vanishing_bilinear_coefficient_is_handled() {
        // (3, -1) makes a1 = 0, where the naive root formula is 0/0.
        let r = optimal_consumption(&pop1_with_policy(3.0, -1.0)).unwrap();
        assert!((r.alpha2_star - 0.15625).abs() < 1e-12);
        assert!((r.resource - 0.03968253968253968).abs() < 1e-12);
        let (a2, _) = brute_force_optimum(&pop1_with_policy(3.0, -1.0), 1e-4).unwrap();
        assert!((a2 - r.alpha2_star).abs() < 1e-4);
    }

    #[test]
    fn out_of_region_policies_are_rejected() {
        assert!(matches!(
            optimal_consumption(&pop1_with_policy(-1.0, -0.5)),
            Err(Error::OutOfRegion(_))
        ));
        assert!(matches!(
            optimal_consumption(&pop1_with_policy(3.0, 5.5)),
            Err(Error::OutOfRegion(_))
        ));
        // Exactly on the lower edge is accepted (closed interval).
        let r = optimal_consumption(&pop1_with_policy(3.0, -2.25)).unwrap();
        assert_eq!(r.alpha2_star, 0.0);
        assert_eq!(r.utility, 0.0);
    }

    #[test]
    fn oracle_matches_closed_form_on_the_reference_policy() {
        let pop1 = baseline_pop1();
        let (a2, u) = brute_force_optimum(&pop1, 1e-5).unwrap();
        assert!((a2 - 0.24904578762562969).abs() <= 1e-4);
        let closed = optimal_consumption(&pop1).unwrap();
        assert!((u - closed.utility).abs() <= 1e-8);
    }

    #[test]
    fn oracle_picks_the_maximal_rate_for_steep_policies() {
        let (a2, u) = brute_force_optimum(&pop1_with_policy(3.0, 2.0), 1e-4).unwrap();
        assert!((a2 - 0.75).abs() <= 1e-6);
        assert!((u - 0.125).abs() <= 1e-8);
    }

    #[test]
    fn oracle_handles_an_empty_support() {
        let (a2, u) = brute_force_optimum(&pop1_with_policy(3.0, -2.25), 1e-3).unwrap();
        assert_eq!(a2, 0.0);
        assert_eq!(u, 0.0);
    }

    #[test]
    fn utility_is_discontinuous_past_theta_only_in_branch_a() {
        let steep = pop1_with_policy(3.0, 2.0);
        assert!(utility(&steep, 0.75) > 0.0);
        assert_eq!(utility(&steep, 0.75 + 1e-9), 0.0);

        // Interior branch: U approaches 0 at the support end.
        let pop1 = baseline_pop1();
        assert!(utility(&pop1, 0.5 - 1e-9) < 1e-8);
        assert_eq!(utility(&pop1, 0.5 + 1e-9), 0.0);
    }

    #[test]
    fn interior_optimum_is_stationary() {
        let pop1 = baseline_pop1();
        let star = optimal_consumption(&pop1).unwrap().alpha2_star;
        let h = 1e-7;
        let fd = (utility(&pop1, star + h) - utility(&pop1, star - h)) / (2.0 * h);
        assert!(fd.abs() <= 1e-5, "U'(alpha2*) = {fd}");
    }

    #[test]
    fn rejects_nonpositive_grid_step() {
        assert!(matches!(
            brute_force_optimum(&baseline_pop1(), 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }
}
