//! Sensitivities of the optimally-exploited resource level `R*` to the
//! responsible population's depleted-state policy, and the ratio comparing
//! the two available incentives (rewarding unilateral vs mutual cooperation).

use alloc::vec::Vec;

use crate::exploit::threshold_c;
use crate::math;
use crate::model::{PolicyDeltas, PopulationSpec};
use crate::Error;

/// Closed forms are refused within this distance (in `d_rt0`, and in `d_sp0`
/// near the region tip) of a regime seam: `R*` is continuous but not
/// differentiable across the threshold curve.
pub const BOUNDARY_EPS: f64 = 1e-2;

/// Below this magnitude of `dR*/d d_rt0` the sensitivity ratio is reported
/// as undefined rather than as a huge number.
pub const RHO_DENOM_TOL: f64 = 1e-15;

/// Additive incentives to the depleted-state payoffs: `u_s` rewards
/// unilateral cooperation (added to S0), `u_r` rewards mutual cooperation
/// (added to R0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncentivePerturbation {
    pub u_s: f64,
    pub u_r: f64,
}

impl IncentivePerturbation {
    pub fn new(u_s: f64, u_r: f64) -> Result<Self, Error> {
        if !(u_s.is_finite() && u_r.is_finite() && u_s >= 0.0 && u_r >= 0.0) {
            return Err(Error::InvalidParameter(alloc::format!(
                "incentives must be nonnegative and finite, got u_s = {u_s}, u_r = {u_r}"
            )));
        }
        Ok(Self { u_s, u_r })
    }
}

/// Which side of the threshold curve the policy sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Above the curve: maximal consumption is optimal.
    Theorem3a,
    /// Below the curve: interior optimum.
    Theorem3b,
}

/// Partial derivatives of `R*` with respect to the two policy deltas, their
/// ratio, and the auxiliary factor `phi` (interior region only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityReport {
    pub dr_dsp0: f64,
    pub dr_drt0: f64,
    /// `dr_dsp0 / dr_drt0`, or `None` when the denominator magnitude is at
    /// most [`RHO_DENOM_TOL`].
    pub rho: Option<f64>,
    pub region: Region,
    pub phi: Option<f64>,
}

/// One cell of a policy-grid sensitivity map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityCell {
    pub d_sp0: f64,
    pub d_rt0: f64,
    /// `None` for infeasible or boundary policies.
    pub report: Option<SensitivityReport>,
}

/// Closed-form gradient of `R*` at a policy strictly inside one region.
///
/// Above the threshold curve, raising the unilateral-cooperation delta has
/// exactly no effect and the mutual-cooperation partial is
/// `d_tr1 / (d_rt0 + d_tr1)^2`. Below it, the partials differentiate the
/// interior-optimum resource formula; they are evaluated in quotient-rule
/// form, which stays finite where the bilinear coefficient `a1` vanishes.
pub fn resource_sensitivities(pop1: &PopulationSpec) -> Result<SensitivityReport, Error> {
    let d = &pop1.deltas;
    let lower = (-(pop1.theta / pop1.alpha) * d.d_sp0).max(-d.d_tr1);
    let upper = (d.d_tr1 / d.d_ps1) * d.d_sp0;
    if !(d.d_sp0 > 0.0) || !(lower <= d.d_rt0) || !(d.d_rt0 < upper) {
        return Err(Error::OutOfRegion(alloc::format!(
            "policy ({}, {}) outside the feasible region",
            d.d_sp0,
            d.d_rt0
        )));
    }

    let c = threshold_c(pop1);
    let seams = [
        (d.d_rt0 - c, "the threshold curve"),
        (d.d_rt0 - upper, "the upper feasibility ray"),
        (d.d_rt0 - lower, "the lower feasibility edge"),
        (d.d_sp0, "the region tip at d_sp0 = 0"),
    ];
    for (slack, name) in seams {
        if math::abs(slack) <= BOUNDARY_EPS {
            return Err(Error::BoundaryPolicy(alloc::format!(
                "policy within {BOUNDARY_EPS} of {name}; closed-form sensitivities are not \
                 valid there"
            )));
        }
    }

    if d.d_rt0 > c {
        let dr_drt0 = d.d_tr1 / ((d.d_rt0 + d.d_tr1) * (d.d_rt0 + d.d_tr1));
        return Ok(SensitivityReport {
            dr_dsp0: 0.0,
            dr_drt0,
            rho: (math::abs(dr_drt0) > RHO_DENOM_TOL).then_some(0.0),
            region: Region::Theorem3a,
            phi: None,
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
    let denom = -slope * (1.0 + phi);

    // d(R*)/d(delta) with R* = g0 / (-slope (1 + phi)); the per-delta
    // derivatives of g0, slope, b1 and Y are constants of the bilinear form.
    let partial = |dg0: f64, dslope: f64, db: f64, dy: f64| -> f64 {
        let dphi = phi / 2.0 * (dy / y - db / g.b - dslope / slope);
        let ddenom = -dslope * (1.0 + phi) - slope * dphi;
        (dg0 * denom - g0 * ddenom) / (denom * denom)
    };
    let dr_dsp0 = partial(1.0 - abar, abar - 1.0, -1.0, d.d_tr1);
    let dr_drt0 = partial(abar, -abar, 1.0, -d.d_ps1);

    Ok(SensitivityReport {
        dr_dsp0,
        dr_drt0,
        rho: (math::abs(dr_drt0) > RHO_DENOM_TOL).then(|| dr_dsp0 / dr_drt0),
        region: Region::Theorem3b,
        phi: Some(phi),
    })
}

/// Evaluate the sensitivity ratio over a policy grid (`sp0` outer, `rt0`
/// inner, matching row-major CSV export order). Infeasible and boundary
/// cells carry no report.
pub fn sensitivity_ratio_map(
    base: &PopulationSpec,
    sp0_grid: &[f64],
    rt0_grid: &[f64],
) -> Vec<SensitivityCell> {
    let mut cells = Vec::with_capacity(sp0_grid.len() * rt0_grid.len());
    for &d_sp0 in sp0_grid {
        for &d_rt0 in rt0_grid {
            let report = PolicyDeltas::new(d_sp0, d_rt0, base.deltas.d_tr1, base.deltas.d_ps1)
                .and_then(|deltas| PopulationSpec::new(deltas, base.theta, base.alpha))
                .and_then(|pop1| resource_sensitivities(&pop1))
                .ok();
            cells.push(SensitivityCell { d_sp0, d_rt0, report });
        }
    }
    cells
}

/// Apply additive cooperation incentives to a policy:
/// `d_sp0 += u_s`, `d_rt0 += u_r`.
///
/// The result is not re-validated; a large mutual-cooperation incentive can
/// push the policy above the feasible region, which validation reports.
pub fn apply_incentive(pop1: &PopulationSpec, inc: &IncentivePerturbation) -> PopulationSpec {
    let mut updated = *pop1;
    updated.deltas.d_sp0 += inc.u_s;
    updated.deltas.d_rt0 += inc.u_r;
    updated
}
