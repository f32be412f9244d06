//! Acceptance suite: one test per release criterion, each printing a
//! `[PASS]` line (run with `--nocapture` to see them).

mod common;

use std::time::Instant;

use common::*;
use ecogame_core::dynamics::{
    classify_trajectory, integrate, jacobian, rhs, IntegratorSettings, OutcomeLabel,
};
use ecogame_core::equilibria::{
    classify_two_population, enumerate_fixed_points, n_star_derivative, sustained_fixed_point,
    RegimeLabel2Pop, TableRow,
};
use ecogame_core::exploit::{
    brute_force_optimum, optimal_consumption, support_of_utility, threshold_c, utility, Branch,
};
use ecogame_core::model::{PolicyDeltas, PopulationSpec, State};
use ecogame_core::sensitivity::{resource_sensitivities, sensitivity_ratio_map, Region};
use rand::Rng;

fn pass(n: u32, what: &str, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_s,
        "criterion {n} exceeded its {budget_s} s budget: {elapsed:.2} s"
    );
    println!("[PASS] criterion {n}: {what} ({elapsed:.2} s)");
}

#[test]
fn criterion_01_sustained_point_residual() {
    let started = Instant::now();
    let mut r = rng(101);
    let mut existing = 0;
    for _ in 0..200 {
        let cfg = sample_config(&mut r);
        let za = enumerate_fixed_points(&cfg)
            .into_iter()
            .find(|rec| matches!(rec.table_row, TableRow::ZA))
            .unwrap();
        if !za.exists {
            continue;
        }
        existing += 1;
        let s = State::new(za.point[0], za.point[1], za.point[2]).unwrap();
        let norm = rhs(&cfg, &s).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(norm <= 1e-10, "residual {norm} for {cfg:?}");
    }
    assert!(existing >= 50, "sampling produced too few sustained points");
    pass(
        1,
        "rhs residual at the sustained fixed point <= 1e-10 over 200 random configs",
        started,
        1.0,
    );
}

#[test]
fn criterion_02_analytic_regimes_match_simulation() {
    let started = Instant::now();
    let mut r = rng(102);
    let settings = IntegratorSettings { store_every: 10_000, ..Default::default() };

    for alpha2 in [0.25, 0.5, 0.9, 1.2] {
        let cfg = baseline_config(alpha2);
        let predicted = classify_two_population(&cfg).unwrap();
        if alpha2 == 0.25 {
            match predicted {
                RegimeLabel2Pop::Sustained { n_star, .. } => {
                    assert!((n_star - 0.053435).abs() < 1e-6)
                }
                other => panic!("expected sustained at alpha2 = 0.25, got {other:?}"),
            }
        } else {
            assert_eq!(predicted, RegimeLabel2Pop::Tragedy, "alpha2 = {alpha2}");
        }

        for _ in 0..20 {
            let s0 = sample_interior_state(&mut r);
            let traj = integrate(&cfg, &s0, &settings).unwrap();
            let outcome = classify_trajectory(&traj, &cfg).label;
            match (&predicted, outcome) {
                (RegimeLabel2Pop::Sustained { n_star, .. }, OutcomeLabel::Sustained { n_final }) => {
                    assert!(
                        (n_final - n_star).abs() <= 1e-3,
                        "alpha2 = {alpha2}: n {n_final} vs {n_star}"
                    );
                }
                (RegimeLabel2Pop::Tragedy, OutcomeLabel::Tragedy) => {}
                (p, o) => panic!("alpha2 = {alpha2}: predicted {p:?}, simulated {o:?}"),
            }
        }
    }
    pass(
        2,
        "predicted regime matches 20 simulated outcomes for each of 4 consumption rates",
        started,
        120.0,
    );
}

#[test]
fn criterion_03_closed_form_optimum_matches_grid_oracle() {
    let started = Instant::now();
    let mut r = rng(103);
    for _ in 0..100 {
        let pop1 = sample_pop1(&mut r);
        let closed = optimal_consumption(&pop1).unwrap();
        let (grid_alpha, grid_u) = brute_force_optimum(&pop1, 1e-5).unwrap();
        assert!(
            (closed.alpha2_star - grid_alpha).abs() <= 1e-4,
            "{:?}: closed {} vs grid {grid_alpha}",
            pop1.deltas,
            closed.alpha2_star
        );
        assert!(
            (closed.utility - grid_u).abs() <= 1e-8,
            "{:?}: closed {} vs grid {grid_u}",
            pop1.deltas,
            closed.utility
        );
    }

    let reference = optimal_consumption(&baseline_pop1()).unwrap();
    assert!((reference.alpha2_star - 0.2490).abs() <= 1e-3);
    assert!((reference.utility - 0.01336).abs() <= 1e-4);
    pass(
        3,
        "closed-form consumption optimum matches the grid/golden oracle on 100 policies",
        started,
        60.0,
    );
}

#[test]
fn criterion_04_maximal_branch_exactness_and_seam_continuity() {
    let started = Instant::now();
    let steep = pop1_with_policy(3.0, 2.0);
    let res = optimal_consumption(&steep).unwrap();
    assert_eq!(res.branch, Branch::Theorem3a);
    assert_eq!(res.alpha2_star, 0.75, "maximal branch takes theta1 exactly");
    assert!((res.resource - 1.0 / 6.0).abs() <= 1e-12);

    // Continuity across the branch seam: the interior-branch formulas
    // evaluated exactly on the threshold curve reproduce the maximal branch.
    let c = threshold_c(&steep);
    assert!((c - 0.9508143668079656).abs() < 1e-9);
    let seam = pop1_with_policy(3.0, c);
    let a = optimal_consumption(&seam).unwrap();
    assert_eq!(a.branch, Branch::Theorem3a);
    let g = seam.coefficients();
    let abar = 1.0 / 1.75;
    let slope = g.dg_dn(abar);
    let g0 = g.b * abar + g.d;
    let y = 10.0 * 3.0 - c * 6.0;
    let phi = (y / (g.b * slope)).sqrt();
    let alpha_b = 1.75 * g0 / (-g.b * (1.0 + phi));
    let resource_b = g0 / (-slope * (1.0 + phi));
    assert!((alpha_b - a.alpha2_star).abs() <= 1e-9, "{alpha_b}");
    assert!((resource_b - a.resource).abs() <= 1e-9, "{resource_b}");
    pass(
        4,
        "maximal-consumption branch is exact and both branches agree on the seam",
        started,
        30.0,
    );
}

#[test]
fn criterion_05_sensitivity_closed_forms_match_finite_differences() {
    let started = Instant::now();
    let mut r = rng(105);
    let h = 1e-6;
    let margin = 0.011; // strictly clear of the 1e-2 seam refusal
    let resource = |p: f64, q: f64| optimal_consumption(&pop1_with_policy(p, q)).unwrap().resource;

    let mut per_region = [0usize; 2];
    while per_region[0] < 50 || per_region[1] < 50 {
        let d_sp0 = r.gen_range(0.5..5.0);
        let lower = (-0.75f64 * d_sp0).max(-10.0);
        let upper = (10.0 / 6.0) * d_sp0;
        let c = threshold_c(&pop1_with_policy(d_sp0, 0.0));
        let pick_b = per_region[0] < 50;
        let (lo, hi) = if pick_b {
            (lower + margin, c - margin)
        } else {
            (c + margin, upper - margin)
        };
        if hi <= lo {
            continue;
        }
        let d_rt0 = r.gen_range(lo..hi);
        let report = match resource_sensitivities(&pop1_with_policy(d_sp0, d_rt0)) {
            Ok(rep) => rep,
            Err(_) => continue,
        };
        per_region[matches!(report.region, Region::Theorem3a) as usize] += 1;

        let fd_sp0 = (resource(d_sp0 + h, d_rt0) - resource(d_sp0 - h, d_rt0)) / (2.0 * h);
        let fd_rt0 = (resource(d_sp0, d_rt0 + h) - resource(d_sp0, d_rt0 - h)) / (2.0 * h);
        let scale_sp0 = fd_sp0.abs().max(1e-9);
        let scale_rt0 = fd_rt0.abs().max(1e-9);
        assert!(
            (report.dr_dsp0 - fd_sp0).abs() / scale_sp0 <= 1e-4,
            "({d_sp0},{d_rt0}) {:?}: {} vs fd {fd_sp0}",
            report.region,
            report.dr_dsp0
        );
        assert!(
            (report.dr_drt0 - fd_rt0).abs() / scale_rt0 <= 1e-4,
            "({d_sp0},{d_rt0}) {:?}: {} vs fd {fd_rt0}",
            report.region,
            report.dr_drt0
        );
    }

    let exact = resource_sensitivities(&pop1_with_policy(3.0, 2.0)).unwrap();
    assert_eq!(exact.dr_dsp0, 0.0);
    assert!((exact.dr_drt0 - 10.0 / 144.0).abs() < 1e-15);
    pass(
        5,
        "closed-form sensitivities match central differences on 50 policies per region",
        started,
        30.0,
    );
}

#[test]
fn criterion_06_incentive_sensitivities_are_nonnegative() {
    let started = Instant::now();
    let mut r = rng(106);
    let mut sampled = 0;
    while sampled < 500 {
        let pop1 = sample_pop1(&mut r);
        let Ok(report) = resource_sensitivities(&pop1) else { continue };
        assert!(report.dr_dsp0 >= -1e-12, "{:?}: {}", pop1.deltas, report.dr_dsp0);
        assert!(report.dr_drt0 >= -1e-12, "{:?}: {}", pop1.deltas, report.dr_drt0);
        sampled += 1;
    }
    pass(
        6,
        "both resource sensitivities are nonnegative at 500 sampled feasible policies",
        started,
        30.0,
    );
}

#[test]
fn criterion_07_utility_concavity_and_support() {
    let started = Instant::now();
    let mut r = rng(107);
    for _ in 0..100 {
        let pop1 = sample_pop1(&mut r);
        let (_, s) = support_of_utility(&pop1);
        if s <= 0.0 {
            continue;
        }
        let grid: Vec<f64> = (0..1000).map(|i| s * i as f64 / 999.0).collect();
        for w in grid.windows(3) {
            let second = utility(&pop1, w[0]) - 2.0 * utility(&pop1, w[1]) + utility(&pop1, w[2]);
            assert!(second <= 1e-9, "{:?}: second difference {second}", pop1.deltas);
        }
        for delta in [1e-6, 1e-3, 0.1] {
            assert_eq!(utility(&pop1, s + delta), 0.0, "{:?}", pop1.deltas);
            assert_eq!(utility(&pop1, pop1.theta + delta), 0.0);
        }
    }
    assert_eq!(support_of_utility(&baseline_pop1()), (0.0, 0.5));
    pass(
        7,
        "utility is concave on its support and zero outside it for 100 policies",
        started,
        30.0,
    );
}

#[test]
fn criterion_08_jacobian_matches_finite_differences() {
    let started = Instant::now();
    let mut r = rng(108);
    let h = 1e-6;
    for _ in 0..10 {
        let cfg = sample_config(&mut r);
        for _ in 0..50 {
            let s = sample_interior_state(&mut r);
            let j = jacobian(&cfg, &s);
            let base = s.to_array();
            for col in 0..3 {
                let mut hi = base;
                let mut lo = base;
                hi[col] += h;
                lo[col] -= h;
                let f_hi = rhs(&cfg, &State::new(hi[0], hi[1], hi[2]).unwrap());
                let f_lo = rhs(&cfg, &State::new(lo[0], lo[1], lo[2]).unwrap());
                for row in 0..3 {
                    let fd = (f_hi[row] - f_lo[row]) / (2.0 * h);
                    let denom = j[row][col].abs().max(1.0);
                    assert!(
                        (j[row][col] - fd).abs() / denom <= 1e-6,
                        "entry ({row},{col}): {} vs fd {fd}",
                        j[row][col]
                    );
                }
            }
        }
    }
    pass(
        8,
        "analytic Jacobian matches central differences at 50 states x 10 configs",
        started,
        30.0,
    );
}

#[test]
fn criterion_09_timescale_invariance_of_regimes_and_verdicts() {
    let started = Instant::now();
    for alpha2 in [0.25, 1.2] {
        let mut regimes = Vec::new();
        let mut verdicts = Vec::new();
        for eps in [0.01, 0.1, 1.0] {
            let mut cfg = baseline_config(alpha2);
            cfg.epsilon = eps;
            regimes.push(classify_two_population(&cfg).unwrap());
            verdicts.push(
                enumerate_fixed_points(&cfg)
                    .into_iter()
                    .map(|rec| rec.stability)
                    .collect::<Vec<_>>(),
            );
        }
        assert!(regimes.windows(2).all(|w| w[0] == w[1]), "alpha2 = {alpha2}");
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "alpha2 = {alpha2}");
    }
    pass(
        9,
        "regimes and stability verdicts are identical across three timescale separations",
        started,
        30.0,
    );
}

#[test]
fn criterion_10_qualitative_surface_and_ratio_maps() {
    let started = Instant::now();

    // Optimally-exploited resource is monotone nondecreasing in both policy
    // deltas over a 40x40 grid covering the feasible region.
    let n = 40;
    let sp0: Vec<f64> = (0..n).map(|i| 0.25 + 4.75 * i as f64 / (n - 1) as f64).collect();
    let rt0: Vec<f64> = (0..n).map(|i| -3.5 + 11.0 * i as f64 / (n - 1) as f64).collect();
    let mut surface = vec![vec![None; n]; n];
    for (i, &p) in sp0.iter().enumerate() {
        for (j, &q) in rt0.iter().enumerate() {
            surface[i][j] = optimal_consumption(&pop1_with_policy(p, q))
                .ok()
                .map(|res| res.resource);
        }
    }
    let tol = 1e-12;
    for i in 0..n {
        for j in 0..n {
            let Some(here) = surface[i][j] else { continue };
            if let Some(Some(right)) = surface[i].get(j + 1) {
                assert!(*right >= here - tol, "R* not nondecreasing in d_rt0 at ({i},{j})");
            }
            if let Some(Some(up)) = surface.get(i + 1).map(|row| &row[j]) {
                assert!(*up >= here - tol, "R* not nondecreasing in d_sp0 at ({i},{j})");
            }
        }
    }

    // Sensitivity-ratio maps for a high and a low mutual-defection delta.
    let grid_sp0: Vec<f64> = (0..n).map(|i| 0.25 + 4.75 * i as f64 / (n - 1) as f64).collect();
    let grid_rt0: Vec<f64> = (0..n).map(|i| -3.5 + 6.0 * i as f64 / (n - 1) as f64).collect();

    let high = PopulationSpec::new(PolicyDeltas::new(3.0, -0.5, 10.0, 9.0).unwrap(), 0.75, 1.0)
        .unwrap();
    let cells = sensitivity_ratio_map(&high, &grid_sp0, &grid_rt0);
    let mut finite = 0;
    for cell in &cells {
        if let Some(rho) = cell.report.as_ref().and_then(|rep| rep.rho) {
            assert!(rho < 1.0, "rho = {rho} at ({}, {})", cell.d_sp0, cell.d_rt0);
            finite += 1;
        }
    }
    assert!(finite > 200, "ratio map too sparse: {finite}");

    let low = PopulationSpec::new(PolicyDeltas::new(3.0, -0.5, 10.0, 2.0).unwrap(), 0.75, 1.0)
        .unwrap();
    let cells = sensitivity_ratio_map(&low, &grid_sp0, &grid_rt0);
    let mut best: Option<(f64, f64, f64)> = None;
    for cell in &cells {
        if let Some(rho) = cell.report.as_ref().and_then(|rep| rep.rho) {
            if best.map_or(true, |(r, _, _)| rho > r) {
                best = Some((rho, cell.d_sp0, cell.d_rt0));
            }
        }
    }
    let (rho_max, at_sp0, at_rt0) = best.expect("some feasible cells");
    assert!(rho_max > 1.0, "expected a cell with rho > 1, max was {rho_max}");
    // The large ratios cluster near the threshold curve.
    let c = threshold_c(&PopulationSpec::new(
        PolicyDeltas::new(at_sp0, 0.0, 10.0, 2.0).unwrap(),
        0.75,
        1.0,
    )
    .unwrap());
    let lower = -(0.75) * at_sp0;
    assert!(
        (c - at_rt0) <= 0.35 * (c - lower),
        "max rho at ({at_sp0}, {at_rt0}) is not near the curve value {c}"
    );
    pass(
        10,
        "resource surface is monotone and ratio maps reproduce the qualitative claims",
        started,
        120.0,
    );
}

#[test]
fn criterion_11_sustained_level_falls_with_consumption() {
    let started = Instant::now();
    let mut r = rng(111);
    for _ in 0..100 {
        let pop1 = sample_pop1(&mut r);
        let alpha2 = 0.5 * support_of_utility(&pop1).1;
        let d = n_star_derivative(&pop1, alpha2).unwrap();
        assert!(d < 0.0, "{:?}: derivative {d}", pop1.deltas);
        let h = 1e-7;
        let hi = sustained_fixed_point(&pop1, alpha2 + h).unwrap().1;
        let lo = sustained_fixed_point(&pop1, alpha2 - h).unwrap().1;
        let fd = (hi - lo) / (2.0 * h);
        assert!(
            (d - fd).abs() / fd.abs() <= 1e-5,
            "{:?}: closed {d} vs fd {fd}",
            pop1.deltas
        );
    }
    pass(
        11,
        "d n*/d alpha2 is negative and matches finite differences on 100 policies",
        started,
        30.0,
    );
}
