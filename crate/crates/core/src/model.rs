//! Parameter containers, derived payoff coefficients, and validation of the
//! standing feasibility assumptions.
//!
//! Policies are canonically represented by four payoff deltas; raw 2x2 payoff
//! matrices are accepted as optional sugar and reduced immediately. All types
//! are immutable values and all operations are pure.

use alloc::vec::Vec;

use crate::Error;

/// Clamping tolerance for state coordinates just outside the unit interval.
pub const STATE_TOL: f64 = 1e-12;

/// Environment-dependent payoff matrices: one 2x2 matrix for the depleted
/// state and one for the abundant state. Row/column 0 is the low-consumption
/// strategy, row/column 1 the high-consumption strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffMatrixPair {
    pub depleted: [[f64; 2]; 2],
    pub abundant: [[f64; 2]; 2],
}

/// The four payoff differences that fully determine a population's behavior:
///
/// - `d_sp0`: S0 - P0, advantage of unilateral low consumption when depleted.
/// - `d_rt0`: R0 - T0, advantage of mutual low consumption when depleted.
/// - `d_tr1`: T1 - R1, advantage of defecting on low consumers when abundant.
/// - `d_ps1`: P1 - S1, advantage of mutual high consumption when abundant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyDeltas {
    pub d_sp0: f64,
    pub d_rt0: f64,
    pub d_tr1: f64,
    pub d_ps1: f64,
}

impl PolicyDeltas {
    pub fn new(d_sp0: f64, d_rt0: f64, d_tr1: f64, d_ps1: f64) -> Result<Self, Error> {
        let deltas = Self { d_sp0, d_rt0, d_tr1, d_ps1 };
        if [d_sp0, d_rt0, d_tr1, d_ps1].iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "non-finite policy delta in {deltas:?}"
            )));
        }
        Ok(deltas)
    }
}

/// Coefficients of the bilinear payoff difference
/// `g(x, n) = a*x*n + b*x + c*n + d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GCoefficients {
    /// `dg/dn` at cooperator fraction `x` (independent of `n`).
    pub fn dg_dn(&self, x: f64) -> f64 {
        self.a * x + self.c
    }

    /// `dg/dx` at resource level `n` (independent of `x`).
    pub fn dg_dx(&self, n: f64) -> f64 {
        self.a * n + self.b
    }
}

/// One population: its policy deltas plus the restoration rate `theta`
/// (from low-consumption activity) and degradation rate `alpha` (from
/// high-consumption activity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationSpec {
    pub deltas: PolicyDeltas,
    pub theta: f64,
    pub alpha: f64,
}

impl PopulationSpec {
    /// `alpha = 0` is allowed: the consumption-rate optimization ranges over
    /// `alpha >= 0`.
    pub fn new(deltas: PolicyDeltas, theta: f64, alpha: f64) -> Result<Self, Error> {
        if !theta.is_finite() || theta <= 0.0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "theta must be positive and finite, got {theta}"
            )));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "alpha must be nonnegative and finite, got {alpha}"
            )));
        }
        Ok(Self { deltas, theta, alpha })
    }

    pub fn coefficients(&self) -> GCoefficients {
        g_coefficients(&self.deltas)
    }
}

/// The full two-population system: the responsible population (`pop1`), the
/// irresponsible population (`pop2`), and the resource timescale separation
/// `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    pub pop1: PopulationSpec,
    pub pop2: PopulationSpec,
    pub epsilon: f64,
}

impl SystemConfig {
    pub fn new(pop1: PopulationSpec, pop2: PopulationSpec, epsilon: f64) -> Result<Self, Error> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidParameter(alloc::format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        Ok(Self { pop1, pop2, epsilon })
    }
}

/// A point `(x1, x2, n)` in the unit cube: cooperator fractions of both
/// populations and the resource level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    x1: f64,
    x2: f64,
    n: f64,
}

impl State {
    /// Accepts coordinates within [`STATE_TOL`] outside `[0, 1]` and clamps
    /// them onto the cube; rejects anything further out or non-finite.
    pub fn new(x1: f64, x2: f64, n: f64) -> Result<Self, Error> {
        let clamp = |v: f64, name: &str| -> Result<f64, Error> {
            if !v.is_finite() || !(-STATE_TOL..=1.0 + STATE_TOL).contains(&v) {
                return Err(Error::InvalidParameter(alloc::format!(
                    "state coordinate {name} = {v} outside [0, 1]"
                )));
            }
            Ok(v.clamp(0.0, 1.0))
        };
        Ok(Self {
            x1: clamp(x1, "x1")?,
            x2: clamp(x2, "x2")?,
            n: clamp(n, "n")?,
        })
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.n]
    }
}

/// Reduce raw payoff matrices to the four policy deltas.
pub fn deltas_from_matrices(m: &PayoffMatrixPair) -> Result<PolicyDeltas, Error> {
    let entries = m
        .depleted
        .iter()
        .chain(m.abundant.iter())
        .flatten();
    if entries.clone().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!(
            "non-finite payoff matrix entry in {m:?}"
        )));
    }
    let [[r0, s0], [t0, p0]] = m.depleted;
    let [[r1, s1], [t1, p1]] = m.abundant;
    PolicyDeltas::new(s0 - p0, r0 - t0, t1 - r1, p1 - s1)
}

/// Coefficients of the bilinear form `g(x, n) = a*x*n + b*x + c*n + d`
/// obtained by expanding the payoff difference between low and high
/// consumers.
pub fn g_coefficients(p: &PolicyDeltas) -> GCoefficients {
    GCoefficients {
        a: p.d_sp0 - p.d_rt0 + p.d_ps1 - p.d_tr1,
        b: p.d_rt0 - p.d_sp0,
        c: -(p.d_ps1 + p.d_sp0),
        d: p.d_sp0,
    }
}

/// How [`validate`] treats violated assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// Any violation (including sitting exactly on a strict boundary) is an
    /// error.
    Strict,
    /// Violations are reported but the config stays usable, e.g. to explore
    /// regimes outside the sustainable-policy region.
    Warn,
}

/// Outcome of validating a [`SystemConfig`] against the feasibility
/// assumptions. Each entry names the inequality concerned.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    /// Strictly violated inequalities.
    pub violations: Vec<&'static str>,
    /// Inequalities that hold with equality where a strict inequality is
    /// required (boundary cases).
    pub boundary: Vec<&'static str>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.boundary.is_empty()
    }
}

/// Check the three standing assumptions:
///
/// 1. high consumption dominates in the abundant state for both populations
///    (`d_tr1 > 0`, `d_ps1 > 0`);
/// 2. the payoff advantage of low consumers decreases in the resource level
///    (`d_sp0 > -d_ps1`, `d_rt0 > -d_tr1`);
/// 3. population 1's depleted-state policy can sustain the resource in
///    isolation (`d_sp0 > 0` and
///    `-(theta1/alpha1)*d_sp0 < d_rt0 < (d_tr1/d_ps1)*d_sp0`), while
///    population 2 always prefers high consumption (`d_sp0 < 0`,
///    `d_rt0 < 0`).
///
/// All boundary inequalities are strict; equality counts as a boundary entry
/// and fails strict mode.
pub fn validate(cfg: &SystemConfig, mode: ValidationMode) -> Result<ValidationReport, Error> {
    let mut report = ValidationReport::default();
    {
        let mut check = |value: f64, bound: f64, name: &'static str| {
            if value < bound {
                report.violations.push(name);
            } else if value == bound {
                report.boundary.push(name);
            }
        };

        let p1 = &cfg.pop1.deltas;
        let p2 = &cfg.pop2.deltas;

        // Assumption 1, both populations.
        check(p1.d_tr1, 0.0, "pop1: d_tr1 > 0");
        check(p1.d_ps1, 0.0, "pop1: d_ps1 > 0");
        check(p2.d_tr1, 0.0, "pop2: d_tr1 > 0");
        check(p2.d_ps1, 0.0, "pop2: d_ps1 > 0");

        // Assumption 2, both populations.
        check(p1.d_sp0, -p1.d_ps1, "pop1: d_sp0 > -d_ps1");
        check(p1.d_rt0, -p1.d_tr1, "pop1: d_rt0 > -d_tr1");
        check(p2.d_sp0, -p2.d_ps1, "pop2: d_sp0 > -d_ps1");
        check(p2.d_rt0, -p2.d_tr1, "pop2: d_rt0 > -d_tr1");

        // Assumption 3: pop1 sustainable in isolation.
        check(p1.d_sp0, 0.0, "pop1 in V: d_sp0 > 0");
        check(
            p1.d_rt0,
            -(cfg.pop1.theta / cfg.pop1.alpha) * p1.d_sp0,
            "pop1 in V: d_rt0 > -(theta1/alpha1)*d_sp0",
        );
        check(
            (p1.d_tr1 / p1.d_ps1) * p1.d_sp0,
            p1.d_rt0,
            "pop1 in V: d_rt0 < (d_tr1/d_ps1)*d_sp0",
        );

        // Assumption 3: pop2 irresponsible.
        check(0.0, p2.d_sp0, "pop2: d_sp0 < 0");
        check(0.0, p2.d_rt0, "pop2: d_rt0 < 0");
    }

    match mode {
        ValidationMode::Strict if !report.is_valid() => {
            let mut names = report.violations;
            names.extend_from_slice(&report.boundary);
            Err(Error::AssumptionViolation(names))
        }
        _ => Ok(report),
    }
}
