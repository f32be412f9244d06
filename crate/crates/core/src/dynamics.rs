//! The coupled replicator/resource ODE: right-hand side, Jacobian, time
//! integration, and numeric classification of asymptotic outcomes.
//!
//! State is `(x1, x2, n)`: cooperator fractions of the two populations and
//! the resource level. The replicator equations drive `x1`, `x2`; the
//! resource follows tipping-point dynamics scaled by the timescale
//! separation `epsilon`:
//!
//! ```text
//! x1' = x1 (1 - x1) g1(x1, n)
//! x2' = x2 (1 - x2) g2(x2, n)
//! n'  = eps n (1 - n) h(x1, x2),   h = sum_i [theta_i x_i - alpha_i (1 - x_i)]
//! ```

use alloc::vec::Vec;

use crate::math;
use crate::model::{GCoefficients, State, SystemConfig, STATE_TOL};
use crate::Error;

/// Resource-level tolerance for the tragedy/abundance outcome labels.
pub const N_TOL: f64 = 1e-3;

/// Window around `alpha2 = theta1` in which asymptotic outcomes depend on the
/// initial condition (a line of fixed points replaces the isolated one).
pub const DEGENERATE_RATE_TOL: f64 = 1e-9;

/// Bilinear payoff difference `g(x, n) = a*x*n + b*x + c*n + d`.
///
/// The domain is not restricted to the unit square so finite-difference
/// probes may step slightly outside.
pub fn payoff_difference(coeffs: &GCoefficients, x: f64, n: f64) -> f64 {
    coeffs.a * x * n + coeffs.b * x + coeffs.c * n + coeffs.d
}

/// Net resource drive `h(x1, x2) = sum_i [theta_i x_i - alpha_i (1 - x_i)]`.
pub fn environment_drive(cfg: &SystemConfig, x1: f64, x2: f64) -> f64 {
    cfg.pop1.theta * x1 - cfg.pop1.alpha * (1.0 - x1) + cfg.pop2.theta * x2
        - cfg.pop2.alpha * (1.0 - x2)
}

fn rhs_array(cfg: &SystemConfig, g1: &GCoefficients, g2: &GCoefficients, s: [f64; 3]) -> [f64; 3] {
    let [x1, x2, n] = s;
    [
        x1 * (1.0 - x1) * payoff_difference(g1, x1, n),
        x2 * (1.0 - x2) * payoff_difference(g2, x2, n),
        cfg.epsilon * n * (1.0 - n) * environment_drive(cfg, x1, x2),
    ]
}

/// Time derivative `(x1', x2', n')` at state `s`.
pub fn rhs(cfg: &SystemConfig, s: &State) -> [f64; 3] {
    rhs_array(cfg, &cfg.pop1.coefficients(), &cfg.pop2.coefficients(), s.to_array())
}

/// Jacobian of [`rhs`] at state `s`.
///
/// The `x1` equation has no `x2` dependence and vice versa, so the (1,2) and
/// (2,1) entries are structurally zero.
pub fn jacobian(cfg: &SystemConfig, s: &State) -> [[f64; 3]; 3] {
    let g1 = cfg.pop1.coefficients();
    let g2 = cfg.pop2.coefficients();
    let (x1, x2, n) = (s.x1(), s.x2(), s.n());
    let eps = cfg.epsilon;

    let j11 = x1 * (1.0 - x1) * g1.dg_dx(n) + (1.0 - 2.0 * x1) * payoff_difference(&g1, x1, n);
    let j13 = x1 * (1.0 - x1) * g1.dg_dn(x1);
    let j22 = x2 * (1.0 - x2) * g2.dg_dx(n) + (1.0 - 2.0 * x2) * payoff_difference(&g2, x2, n);
    let j23 = x2 * (1.0 - x2) * g2.dg_dn(x2);
    let j31 = n * (1.0 - n) * (cfg.pop1.theta + cfg.pop1.alpha);
    let j32 = n * (1.0 - n) * (cfg.pop2.theta + cfg.pop2.alpha);
    let j33 = (1.0 - 2.0 * n) * environment_drive(cfg, x1, x2);

    [
        [j11, 0.0, j13],
        [0.0, j22, j23],
        [eps * j31, eps * j32, eps * j33],
    ]
}

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegratorMethod {
    /// Classic fourth-order Runge-Kutta with a fixed step. Bit-reproducible
    /// across runs; the default.
    Rk4Fixed,
    /// Dormand-Prince 5(4) with adaptive step control.
    Rk45Adaptive,
}

/// Integration controls. `dt` is the fixed step (and the initial trial step
/// for the adaptive method); a trajectory terminates as converged once the
/// max-norm of the right-hand side stays below `convergence_eps` for
/// `convergence_window` time units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSettings {
    pub method: IntegratorMethod,
    pub dt: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub t_max: f64,
    pub convergence_window: f64,
    pub convergence_eps: f64,
    /// Keep every k-th accepted step (the initial and final states are always
    /// kept). 1 stores the full trajectory.
    pub store_every: usize,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        Self {
            method: IntegratorMethod::Rk4Fixed,
            dt: 0.01,
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            t_max: 1e5,
            convergence_window: 10.0,
            convergence_eps: 1e-9,
            store_every: 1,
        }
    }
}

impl IntegratorSettings {
    fn validate(&self) -> Result<(), Error> {
        let positive = [
            (self.dt, "dt"),
            (self.rel_tol, "rel_tol"),
            (self.abs_tol, "abs_tol"),
            (self.t_max, "t_max"),
            (self.convergence_window, "convergence_window"),
            (self.convergence_eps, "convergence_eps"),
        ];
        for (v, name) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter(alloc::format!(
                    "integrator setting {name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.dt > self.t_max {
            return Err(Error::InvalidParameter(alloc::format!(
                "dt = {} exceeds t_max = {}",
                self.dt,
                self.t_max
            )));
        }
        if self.store_every == 0 {
            return Err(Error::InvalidParameter(
                "store_every must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Why integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalReason {
    /// The right-hand side stayed below `convergence_eps` for a full window.
    Converged,
    /// `t_max` was reached first.
    MaxTime,
    /// Marked non-convergent by a classifier or an external producer.
    NonConvergent,
}

/// A time-ordered sequence of states produced by [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub terminal_reason: TerminalReason,
}

impl Trajectory {
    pub fn final_state(&self) -> &State {
        self.states.last().expect("trajectory holds at least the initial state")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds at least the initial state")
    }
}

/// Clamp one coordinate back into the open cube after a step. Exact faces are
/// invariant under the dynamics and stay untouched, so trajectories started
/// on a face remain on it exactly.
fn clamp_coord(v: f64) -> f64 {
    if v == 0.0 || v == 1.0 {
        v
    } else {
        v.clamp(STATE_TOL, 1.0 - STATE_TOL)
    }
}

fn clamp_state(s: [f64; 3]) -> [f64; 3] {
    [clamp_coord(s[0]), clamp_coord(s[1]), clamp_coord(s[2])]
}

fn inf_norm(v: [f64; 3]) -> f64 {
    math::abs(v[0]).max(math::abs(v[1])).max(math::abs(v[2]))
}

fn is_finite(s: [f64; 3]) -> bool {
    s.iter().all(|v| v.is_finite())
}

struct Recorder {
    times: Vec<f64>,
    states: Vec<State>,
    store_every: usize,
    accepted: usize,
}

impl Recorder {
    fn new(t0: f64, s0: [f64; 3], store_every: usize) -> Self {
        let mut rec = Self {
            times: Vec::new(),
            states: Vec::new(),
            store_every,
            accepted: 0,
        };
        rec.push(t0, s0);
        rec
    }

    fn push(&mut self, t: f64, s: [f64; 3]) {
        self.times.push(t);
        self.states
            .push(State::new(s[0], s[1], s[2]).expect("clamped state is inside the cube"));
    }

    fn record(&mut self, t: f64, s: [f64; 3]) {
        self.accepted += 1;
        if self.accepted % self.store_every == 0 {
            self.push(t, s);
        }
    }

    fn finish(mut self, t: f64, s: [f64; 3], reason: TerminalReason) -> Trajectory {
        if self.times.last() != Some(&t) {
            self.push(t, s);
        }
        Trajectory {
            times: self.times,
            states: self.states,
            terminal_reason: reason,
        }
    }
}

/// Tracks how long the right-hand side has stayed below the convergence
/// threshold.
struct ConvergenceWatch {
    eps: f64,
    window: f64,
    below_since: Option<f64>,
}

impl ConvergenceWatch {
    fn update(&mut self, t: f64, norm: f64) -> bool {
        if norm < self.eps {
            match self.below_since {
                Some(since) => t - since >= self.window,
                None => {
                    self.below_since = Some(t);
                    false
                }
            }
        } else {
            self.below_since = None;
            false
        }
    }
}

/// Integrate the system from `s0` until convergence or `t_max`.
///
/// Every accepted step is clamped back into the cube; initial conditions on a
/// face stay on that face exactly. Produces [`Error::NonFiniteState`] if the
/// state leaves the finite range, which signals a settings problem.
pub fn integrate(
    cfg: &SystemConfig,
    s0: &State,
    settings: &IntegratorSettings,
) -> Result<Trajectory, Error> {
    settings.validate()?;
    match settings.method {
        IntegratorMethod::Rk4Fixed => integrate_rk4(cfg, s0, settings),
        IntegratorMethod::Rk45Adaptive => integrate_rk45(cfg, s0, settings),
    }
}

fn integrate_rk4(
    cfg: &SystemConfig,
    s0: &State,
    settings: &IntegratorSettings,
) -> Result<Trajectory, Error> {
    let g1 = cfg.pop1.coefficients();
    let g2 = cfg.pop2.coefficients();
    let f = |s: [f64; 3]| rhs_array(cfg, &g1, &g2, s);

    let mut s = s0.to_array();
    let mut t = 0.0;
    let mut rec = Recorder::new(t, s, settings.store_every);
    let mut watch = ConvergenceWatch {
        eps: settings.convergence_eps,
        window: settings.convergence_window,
        below_since: None,
    };

    while t < settings.t_max {
        let dt = settings.dt.min(settings.t_max - t);
        let k1 = f(s);
        let k2 = f(step(s, dt / 2.0, k1));
        let k3 = f(step(s, dt / 2.0, k2));
        let k4 = f(step(s, dt, k3));
        let mut next = s;
        for i in 0..3 {
            next[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !is_finite(next) {
            return Err(Error::NonFiniteState { t: t + dt });
        }
        s = clamp_state(next);
        t += dt;
        rec.record(t, s);
        if watch.update(t, inf_norm(f(s))) {
            return Ok(rec.finish(t, s, TerminalReason::Converged));
        }
    }
    Ok(rec.finish(t, s, TerminalReason::MaxTime))
}

fn step(s: [f64; 3], h: f64, k: [f64; 3]) -> [f64; 3] {
    [s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2]]
}

// Dormand-Prince 5(4) tableau.
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_ERR: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn integrate_rk45(
    cfg: &SystemConfig,
    s0: &State,
    settings: &IntegratorSettings,
) -> Result<Trajectory, Error> {
    let g1 = cfg.pop1.coefficients();
    let g2 = cfg.pop2.coefficients();
    let f = |s: [f64; 3]| rhs_array(cfg, &g1, &g2, s);

    let mut s = s0.to_array();
    let mut t = 0.0;
    let mut h = settings.dt;
    let mut rec = Recorder::new(t, s, settings.store_every);
    let mut watch = ConvergenceWatch {
        eps: settings.convergence_eps,
        window: settings.convergence_window,
        below_since: None,
    };

    while t < settings.t_max {
        h = h.min(settings.t_max - t);
        let mut k = [[0.0; 3]; 7];
        k[0] = f(s);
        for stage in 0..6 {
            let mut y = s;
            for (j, kj) in k.iter().enumerate().take(stage + 1) {
                for i in 0..3 {
                    y[i] += h * DP_A[stage][j] * kj[i];
                }
            }
            k[stage + 1] = f(y);
        }

        let mut next = s;
        let mut err = [0.0; 3];
        for i in 0..3 {
            for (j, kj) in k.iter().enumerate() {
                next[i] += h * DP_B5[j] * kj[i];
                err[i] += h * DP_ERR[j] * kj[i];
            }
        }

        let mut err_norm: f64 = 0.0;
        for i in 0..3 {
            let scale = settings.abs_tol + settings.rel_tol * math::abs(s[i]).max(math::abs(next[i]));
            err_norm = err_norm.max(math::abs(err[i]) / scale);
        }

        if !err_norm.is_finite() || !is_finite(next) {
            h *= 0.1;
            if h < 1e-14 {
                return Err(Error::NonFiniteState { t });
            }
            continue;
        }

        if err_norm <= 1.0 {
            s = clamp_state(next);
            t += h;
            rec.record(t, s);
            if watch.update(t, inf_norm(f(s))) {
                return Ok(rec.finish(t, s, TerminalReason::Converged));
            }
        }

        let factor = 0.9 * math::powf(err_norm, -0.2);
        h *= factor.clamp(0.2, 5.0);
        if h < 1e-13 {
            return Err(Error::NonFiniteState { t });
        }
    }
    Ok(rec.finish(t, s, TerminalReason::MaxTime))
}

/// Asymptotic outcome read off a trajectory: the resource collapsed
/// (tragedy), saturated (abundance), settled at an interior level
/// (sustained), or the run ended without converging.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutcomeLabel {
    Tragedy,
    Sustained { n_final: f64 },
    Abundance,
    NonConvergent,
}

/// Outcome label plus a flag for the degenerate consumption rate
/// `alpha2 = theta1`, where the reached resource level depends on the
/// initial condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryClassification {
    pub label: OutcomeLabel,
    pub initial_condition_dependent: bool,
}

/// Distance below which a converged endpoint counts as sitting on a cube
/// corner.
const CORNER_SNAP_TOL: f64 = 1e-6;
/// Real parts above this mark a corner as repelling in some direction.
const STALL_EIG_TOL: f64 = 1e-6;

/// A clamped trajectory cycling among the cube corners (the oscillating
/// regime) dwells at each corner long enough to trip the convergence window.
/// Such an endpoint sits on a corner that the linearization leaves; a real
/// corner attractor has no escaping direction.
fn stalled_at_repelling_corner(cfg: &SystemConfig, s: &State) -> bool {
    let snap = |v: f64| if v < 0.5 { 0.0 } else { 1.0 };
    let coords = s.to_array();
    if coords.iter().any(|&v| math::abs(v - snap(v)) > CORNER_SNAP_TOL) {
        return false;
    }
    let corner = State::new(snap(coords[0]), snap(coords[1]), snap(coords[2]))
        .expect("corners are in the cube");
    // The Jacobian is diagonal at an exact corner.
    let j = jacobian(cfg, &corner);
    (0..3).any(|i| j[i][i] > STALL_EIG_TOL)
}

/// Label the asymptotic outcome of a converged trajectory; anything that hit
/// the time limit is non-convergent, as is a spurious stall on a repelling
/// corner.
pub fn classify_trajectory(t: &Trajectory, cfg: &SystemConfig) -> TrajectoryClassification {
    let label = match t.terminal_reason {
        TerminalReason::Converged if stalled_at_repelling_corner(cfg, t.final_state()) => {
            OutcomeLabel::NonConvergent
        }
        TerminalReason::Converged => {
            let n = t.final_state().n();
            if n < N_TOL {
                OutcomeLabel::Tragedy
            } else if n > 1.0 - N_TOL {
                OutcomeLabel::Abundance
            } else {
                OutcomeLabel::Sustained { n_final: n }
            }
        }
        TerminalReason::MaxTime | TerminalReason::NonConvergent => OutcomeLabel::NonConvergent,
    };
    TrajectoryClassification {
        label,
        initial_condition_dependent: math::abs(cfg.pop2.alpha - cfg.pop1.theta)
            <= DEGENERATE_RATE_TOL,
    }
}
