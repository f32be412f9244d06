//! Closed-form fixed points of the coupled system, their eigenvalues, and
//! analytic regime classification.
//!
//! Because the irresponsible population's cooperator fraction decays to zero,
//! every candidate attractor lies on the `x2 = 0` face. The catalog of fixed
//! points of the form `(x1, 0, n)`:
//!
//! - `zA`: the sustained-resource point, interior in `x1` and `n`;
//! - `zB`: collapsed resource with mixed consumption in population 1;
//! - `zC1..zC4`: the corners `(0,0,0)`, `(0,0,1)`, `(1,0,0)`, `(1,0,1)`;
//! - a line segment `(1, 0, n)` when the consumption rate equals the
//!   restoration rate exactly;
//! - a formal interior point with `n = 1` that never lies in the cube.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dynamics::jacobian;
use crate::math;
use crate::model::{validate, PopulationSpec, State, SystemConfig, ValidationMode};
use crate::Error;

/// Real parts within this tolerance of zero make a fixed point
/// non-hyperbolic; the classifier then refuses a stable/unstable call.
pub const HYPERBOLICITY_TOL: f64 = 1e-12;

/// Policies within this distance of a regime-separating curve are rejected
/// as unclassifiable boundary cases.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Identity of a fixed point in the catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TableRow {
    ZA,
    ZB,
    ZC1,
    ZC2,
    ZC3,
    ZC4,
    /// The continuum `(1, 0, n)` for `n` in the given range.
    LineSegment { n_range: (f64, f64) },
    InteriorAbundant,
}

/// Stability verdict derived from the eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stability {
    Stable,
    Unstable,
    NonHyperbolic,
    /// The sub-segment with `n < n_max` attracts nearby trajectories along a
    /// center manifold.
    LineAttracting { n_max: f64 },
}

/// One catalog row: where the point sits, whether it exists for this config,
/// and (for existing points) its eigenvalues and stability verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointRecord {
    /// Coordinates `(x1, x2, n)`. May lie outside the cube (or be NaN for a
    /// degenerate formula) when `exists` is false.
    pub point: [f64; 3],
    pub table_row: TableRow,
    pub exists: bool,
    /// Sorted by real part, descending.
    pub eigenvalues: Option<[Complex64; 3]>,
    pub stability: Option<Stability>,
}

/// Asymptotic regime of the two-population system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeLabel2Pop {
    Tragedy,
    Sustained { x1_star: f64, n_star: f64 },
    LineSegment { n_max: f64 },
}

/// Asymptotic regime of a population taken in isolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeLabel1Pop {
    Sustained { x_star: f64, n_star: f64 },
    /// Oscillating tragedy: a stable heteroclinic cycle among the four
    /// corners. Labeled analytically only; simulations in this regime do not
    /// converge.
    Otoc,
    Tragedy,
}

/// The sustained-resource fixed point `(x1*, n*)` on the `x2 = 0` face for a
/// given consumption rate of the other population:
/// `x1* = (alpha1 + alpha2) / (alpha1 + theta1)` and `n*` is the root of
/// `g1(x1*, n) = 0`.
///
/// No range check is performed; callers decide whether `n*` lies in `(0, 1)`.
pub fn sustained_fixed_point(pop1: &PopulationSpec, alpha2: f64) -> Result<(f64, f64), Error> {
    let g = pop1.coefficients();
    let x1 = (pop1.alpha + alpha2) / (pop1.alpha + pop1.theta);
    let slope = g.dg_dn(x1);
    if slope == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok((x1, -(g.b * x1 + g.d) / slope))
}

/// `d n*/d alpha2`: the sustained resource level falls as the other
/// population consumes faster (negative whenever `Y > 0`).
pub fn n_star_derivative(pop1: &PopulationSpec, alpha2: f64) -> Result<f64, Error> {
    let g = pop1.coefficients();
    let d = &pop1.deltas;
    let total = pop1.alpha + pop1.theta;
    let x1 = (pop1.alpha + alpha2) / total;
    let slope = g.dg_dn(x1);
    if slope == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    let y = d.d_tr1 * d.d_sp0 - d.d_rt0 * d.d_ps1;
    Ok(-y / (total * slope * slope))
}

fn in_cube(p: [f64; 3]) -> bool {
    p.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v))
}

fn verdict(eigs: &[Complex64; 3]) -> Stability {
    if eigs.iter().any(|l| math::abs(l.re) <= HYPERBOLICITY_TOL) {
        Stability::NonHyperbolic
    } else if eigs.iter().all(|l| l.re < 0.0) {
        Stability::Stable
    } else {
        Stability::Unstable
    }
}

fn eigs_of_jacobian(cfg: &SystemConfig, point: [f64; 3]) -> [Complex64; 3] {
    let s = State::new(point[0], point[1], point[2]).expect("existing fixed point lies in cube");
    math::eigenvalues_3x3(&jacobian(cfg, &s))
}

/// Enumerate the full fixed-point catalog for a config.
///
/// Existence follows the catalog conditions (plus a containment check so
/// `exists` always implies the point sits in the cube, also for configs used
/// outside the standing assumptions). Eigenvalues use the closed forms for
/// `zA` and the corners and a direct eigensolve of the Jacobian for `zB` and
/// the line segment.
pub fn enumerate_fixed_points(cfg: &SystemConfig) -> Vec<FixedPointRecord> {
    let p1 = &cfg.pop1.deltas;
    let g1 = cfg.pop1.coefficients();
    let g2 = cfg.pop2.coefficients();
    let (theta1, alpha1) = (cfg.pop1.theta, cfg.pop1.alpha);
    let alpha2 = cfg.pop2.alpha;
    let eps = cfg.epsilon;

    let mut records = Vec::with_capacity(8);

    // zA: sustained resource.
    {
        let x1 = (alpha1 + alpha2) / (alpha1 + theta1);
        let slope = g1.dg_dn(x1);
        let n = -(g1.b * x1 + g1.d) / slope;
        let point = [x1, 0.0, n];
        let condition =
            alpha2 < theta1 && (alpha2 - theta1) / (alpha1 + alpha2) * p1.d_sp0 < p1.d_rt0;
        let exists = condition && in_cube(point);
        let eigenvalues = exists.then(|| {
            // The x2 direction decouples: lambda1 = g2(0, n*). The (x1, n)
            // block contributes a quadratic pair.
            let lam1 = Complex64::new(g2.c * n + g2.d, 0.0);
            let m = g1.dg_dx(n) * x1 * (1.0 - x1);
            let k = n * (1.0 - n) * (theta1 + alpha1) * x1 * (1.0 - x1) * math::abs(slope);
            let pair = math::solve_monic_quadratic(-m, eps * k);
            let mut eigs = [lam1, pair[0], pair[1]];
            math::sort_by_re_desc(&mut eigs);
            eigs
        });
        records.push(FixedPointRecord {
            point,
            table_row: TableRow::ZA,
            exists,
            stability: eigenvalues.as_ref().map(verdict),
            eigenvalues,
        });
    }

    // zB: collapsed resource, mixed consumption in population 1.
    {
        let x1 = p1.d_sp0 / (p1.d_sp0 - p1.d_rt0);
        let point = [x1, 0.0, 0.0];
        let exists = p1.d_rt0 <= 0.0 && in_cube(point);
        let eigenvalues = exists.then(|| eigs_of_jacobian(cfg, point));
        records.push(FixedPointRecord {
            point,
            table_row: TableRow::ZB,
            exists,
            stability: eigenvalues.as_ref().map(verdict),
            eigenvalues,
        });
    }

    // Corners always exist; their Jacobian is diagonal.
    let corners = [
        (TableRow::ZC1, [0.0, 0.0, 0.0]),
        (TableRow::ZC2, [0.0, 0.0, 1.0]),
        (TableRow::ZC3, [1.0, 0.0, 0.0]),
        (TableRow::ZC4, [1.0, 0.0, 1.0]),
    ];
    for (row, point) in corners {
        let s = State::new(point[0], point[1], point[2]).expect("corner is in cube");
        let j = jacobian(cfg, &s);
        let mut eigs = [
            Complex64::new(j[0][0], 0.0),
            Complex64::new(j[1][1], 0.0),
            Complex64::new(j[2][2], 0.0),
        ];
        math::sort_by_re_desc(&mut eigs);
        records.push(FixedPointRecord {
            point,
            table_row: row,
            exists: true,
            stability: Some(verdict(&eigs)),
            eigenvalues: Some(eigs),
        });
    }

    // Line segment (1, 0, n), n in [0, 1], when alpha2 = theta1 exactly.
    {
        let point = [1.0, 0.0, 0.0]; // representative: the n = 0 end
        let exists = alpha2 == theta1 && p1.d_rt0 >= 0.0;
        let eigenvalues = exists.then(|| eigs_of_jacobian(cfg, point));
        let n_max = p1.d_rt0 / (p1.d_rt0 + p1.d_tr1);
        records.push(FixedPointRecord {
            point,
            table_row: TableRow::LineSegment { n_range: (0.0, 1.0) },
            exists,
            stability: exists.then_some(Stability::LineAttracting { n_max }),
            eigenvalues,
        });
    }

    // Formal abundant-state solution of g1(x1, 1) = 0; never inside the cube.
    {
        let x1 = p1.d_ps1 / (p1.d_ps1 - p1.d_tr1);
        records.push(FixedPointRecord {
            point: [x1, 0.0, 1.0],
            table_row: TableRow::InteriorAbundant,
            exists: false,
            stability: None,
            eigenvalues: None,
        });
    }

    records
}

/// Analytic regime of the two-population system:
///
/// - consumption above the restoration rate collapses the resource;
/// - below it, the policy either sustains `(x1*, 0, n*)` or still collapses
///   when the mutual-cooperation delta is too negative;
/// - at exact equality a line segment of fixed points appears and the reached
///   level depends on the initial condition.
pub fn classify_two_population(cfg: &SystemConfig) -> Result<RegimeLabel2Pop, Error> {
    let report = validate(cfg, ValidationMode::Warn)?;
    if !report.violations.is_empty() {
        return Err(Error::OutOfRegion(report.violations.join("; ").into()));
    }
    if !report.boundary.is_empty() {
        return Err(Error::BoundaryPolicy(report.boundary.join("; ").into()));
    }

    let p1 = &cfg.pop1.deltas;
    let (theta1, alpha1) = (cfg.pop1.theta, cfg.pop1.alpha);
    let alpha2 = cfg.pop2.alpha;

    if alpha2 > theta1 {
        return Ok(RegimeLabel2Pop::Tragedy);
    }
    if alpha2 == theta1 {
        return Ok(if p1.d_rt0 > 0.0 {
            RegimeLabel2Pop::LineSegment { n_max: p1.d_rt0 / (p1.d_rt0 + p1.d_tr1) }
        } else {
            RegimeLabel2Pop::Tragedy
        });
    }
    let threshold = (alpha2 - theta1) / (alpha1 + alpha2) * p1.d_sp0;
    if p1.d_rt0 <= threshold {
        return Ok(RegimeLabel2Pop::Tragedy);
    }
    let (x1_star, n_star) = sustained_fixed_point(&cfg.pop1, alpha2)?;
    Ok(RegimeLabel2Pop::Sustained { x1_star, n_star })
}

/// Analytic regime of a single population over its own resource.
///
/// Policies exactly on a separating curve (within [`BOUNDARY_TOL`]) are
/// rejected: the classification theorem does not cover them.
pub fn classify_single_population(p: &PopulationSpec) -> Result<RegimeLabel1Pop, Error> {
    let d = &p.deltas;
    if d.d_sp0 <= 0.0 {
        return Ok(RegimeLabel1Pop::Tragedy);
    }
    let upper = (d.d_tr1 / d.d_ps1) * d.d_sp0;
    let lower = -(p.theta / p.alpha) * d.d_sp0; // -inf when alpha = 0
    if math::abs(d.d_rt0 - upper) <= BOUNDARY_TOL {
        return Err(Error::BoundaryPolicy(
            "policy on the curve d_rt0 = (d_tr1/d_ps1)*d_sp0".into(),
        ));
    }
    if lower.is_finite() && math::abs(d.d_rt0 - lower) <= BOUNDARY_TOL {
        return Err(Error::BoundaryPolicy(
            "policy on the curve d_rt0 = -(theta/alpha)*d_sp0".into(),
        ));
    }
    if d.d_rt0 > upper {
        return Ok(RegimeLabel1Pop::Otoc);
    }
    if d.d_rt0 < lower {
        return Ok(RegimeLabel1Pop::Tragedy);
    }
    let g = p.coefficients();
    let x_star = p.alpha / (p.alpha + p.theta);
    let slope = g.dg_dn(x_star);
    if slope == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    let n_star = -(g.b * x_star + g.d) / slope;
    Ok(RegimeLabel1Pop::Sustained { x_star, n_star })
}
