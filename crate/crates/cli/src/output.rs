//! Serialization of analysis results: CSV fields at full double precision
//! and the JSON shapes documented in `schemas/`.

use ecogame_core::dynamics::{OutcomeLabel, TrajectoryClassification};
use ecogame_core::equilibria::{
    FixedPointRecord, RegimeLabel1Pop, RegimeLabel2Pop, Stability, TableRow,
};
use ecogame_core::exploit::{Branch, ExploitResult};
use ecogame_core::sensitivity::{Region, SensitivityCell, SensitivityReport};
use serde_json::{json, Value};

/// 17 significant digits: exact round-trip for `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV cell: full-precision number or the empty field for missing values.
pub fn csv_field(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn outcome_name(label: &OutcomeLabel) -> &'static str {
    match label {
        OutcomeLabel::Tragedy => "tragedy",
        OutcomeLabel::Sustained { .. } => "sustained",
        OutcomeLabel::Abundance => "abundance",
        OutcomeLabel::NonConvergent => "non_convergent",
    }
}

pub fn simulation_summary_entry(
    ic: &[f64; 3],
    classification: &TrajectoryClassification,
    final_state: &[f64; 3],
    t_final: f64,
    trajectory_file: &str,
) -> Value {
    let n_final = match classification.label {
        OutcomeLabel::Sustained { n_final } => Some(n_final),
        _ => None,
    };
    json!({
        "outcome": outcome_name(&classification.label),
        "n_final": n_final,
        "initial_condition_dependent": classification.initial_condition_dependent,
        "ic": ic,
        "final_state": final_state,
        "t_final": t_final,
        "trajectory": trajectory_file,
    })
}

pub fn regime_two_pop_json(label: &RegimeLabel2Pop, records: &[FixedPointRecord]) -> Value {
    let fixed_points: Vec<Value> = records.iter().map(fixed_point_json).collect();
    match label {
        RegimeLabel2Pop::Tragedy => json!({
            "regime": "tragedy",
            "fixed_points": fixed_points,
        }),
        RegimeLabel2Pop::Sustained { x1_star, n_star } => json!({
            "regime": "sustained",
            "x1_star": x1_star,
            "n_star": n_star,
            "fixed_points": fixed_points,
        }),
        RegimeLabel2Pop::LineSegment { n_max } => json!({
            "regime": "line_segment",
            "n_max": n_max,
            "fixed_points": fixed_points,
        }),
    }
}

pub fn regime_single_pop_json(label: &RegimeLabel1Pop) -> Value {
    match label {
        RegimeLabel1Pop::Sustained { x_star, n_star } => json!({
            "regime": "sustained",
            "x_star": x_star,
            "n_star": n_star,
        }),
        RegimeLabel1Pop::Otoc => json!({ "regime": "otoc" }),
        RegimeLabel1Pop::Tragedy => json!({ "regime": "tragedy" }),
    }
}

pub fn fixed_point_json(record: &FixedPointRecord) -> Value {
    let (row, n_range) = match record.table_row {
        TableRow::ZA => ("zA", None),
        TableRow::ZB => ("zB", None),
        TableRow::ZC1 => ("zC1", None),
        TableRow::ZC2 => ("zC2", None),
        TableRow::ZC3 => ("zC3", None),
        TableRow::ZC4 => ("zC4", None),
        TableRow::LineSegment { n_range } => ("line_segment", Some(n_range)),
        TableRow::InteriorAbundant => ("interior_abundant", None),
    };
    let eigenvalues: Option<Vec<Value>> = record.eigenvalues.map(|eigs| {
        eigs.iter()
            .map(|l| json!({ "re": l.re, "im": l.im }))
            .collect()
    });
    let (stability, n_max) = match record.stability {
        None => (None, None),
        Some(Stability::Stable) => (Some("stable"), None),
        Some(Stability::Unstable) => (Some("unstable"), None),
        Some(Stability::NonHyperbolic) => (Some("non_hyperbolic"), None),
        Some(Stability::LineAttracting { n_max }) => (Some("line_attracting"), Some(n_max)),
    };
    let mut value = json!({
        "point": record.point,
        "table_row": row,
        "exists": record.exists,
        "eigenvalues": eigenvalues,
        "stability": stability,
    });
    if let Some((lo, hi)) = n_range {
        value["n_range"] = json!([lo, hi]);
    }
    if let Some(n_max) = n_max {
        value["n_max"] = json!(n_max);
    }
    value
}

pub fn branch_name(branch: &Branch) -> &'static str {
    match branch {
        Branch::Theorem3a => "theorem3a",
        Branch::Theorem3bCase1 => "theorem3b_case1",
        Branch::Theorem3bCase2 => "theorem3b_case2",
    }
}

pub fn exploit_json(result: &ExploitResult) -> Value {
    json!({
        "alpha2_star": result.alpha2_star,
        "resource": result.resource,
        "utility": result.utility,
        "branch": branch_name(&result.branch),
        "support_upper": result.support_upper,
    })
}

pub fn region_name(region: &Region) -> &'static str {
    match region {
        Region::Theorem3a => "theorem3a",
        Region::Theorem3b => "theorem3b",
    }
}

pub fn sensitivity_json(report: &SensitivityReport) -> Value {
    json!({
        "dR_dsp0": report.dr_dsp0,
        "dR_drt0": report.dr_drt0,
        "rho": report.rho,
        "region": region_name(&report.region),
        "phi": report.phi,
    })
}

pub const SENSITIVITY_GRID_HEADER: &str = "d_sp0,d_rt0,region,dR_dsp0,dR_drt0,rho";

pub fn sensitivity_grid_csv(cells: &[SensitivityCell]) -> String {
    let mut out = String::from(SENSITIVITY_GRID_HEADER);
    out.push('\n');
    for cell in cells {
        let (region, dsp0, drt0, rho) = match &cell.report {
            Some(rep) => (
                region_name(&rep.region),
                Some(rep.dr_dsp0),
                Some(rep.dr_drt0),
                rep.rho,
            ),
            None => ("", None, None, None),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(cell.d_sp0),
            fmt_f64(cell.d_rt0),
            region,
            csv_field(dsp0),
            csv_field(drt0),
            csv_field(rho),
        ));
    }
    out
}
