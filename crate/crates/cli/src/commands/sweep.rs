use ecogame_core::equilibria::{classify_two_population, RegimeLabel2Pop};
use ecogame_core::exploit::optimal_consumption;
use ecogame_core::model::SystemConfig;
use rayon::prelude::*;

use crate::commands::{linspace, parse_range};
use crate::error::CliError;
use crate::output::{csv_field, fmt_f64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VaryParam {
    Alpha2,
    DSp0,
    DRt0,
}

impl VaryParam {
    fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "alpha2" => Ok(Self::Alpha2),
            "d_sp0" => Ok(Self::DSp0),
            "d_rt0" => Ok(Self::DRt0),
            other => Err(CliError::Config(format!(
                "unknown sweep parameter {other:?} (expected alpha2, d_sp0, or d_rt0)"
            ))),
        }
    }

    fn apply(self, cfg: &mut SystemConfig, value: f64) {
        match self {
            Self::Alpha2 => cfg.pop2.alpha = value,
            Self::DSp0 => cfg.pop1.deltas.d_sp0 = value,
            Self::DRt0 => cfg.pop1.deltas.d_rt0 = value,
        }
    }
}

/// Evaluate the regime label and consumption optimum over a one- or
/// two-parameter grid. Cells run independently (and in parallel) with
/// deterministic ordering; infeasible cells leave their columns empty.
pub fn run_sweep(base: &SystemConfig, vary_specs: &[String]) -> Result<String, CliError> {
    if vary_specs.is_empty() || vary_specs.len() > 2 {
        return Err(CliError::Config(
            "sweep takes one or two --vary parameters".into(),
        ));
    }

    let mut axes = Vec::new();
    for spec in vary_specs {
        let (name, range) = spec.split_once('=').ok_or_else(|| {
            CliError::Config(format!("malformed --vary {spec:?} (expected name=lo:hi:steps)"))
        })?;
        let param = VaryParam::parse(name)?;
        if axes.iter().any(|(p, _)| *p == param) {
            return Err(CliError::Config(format!("parameter {name:?} varied twice")));
        }
        let (lo, hi, steps) = parse_range(range)?;
        axes.push((param, linspace(lo, hi, steps)?));
    }

    let cells: Vec<Vec<(VaryParam, f64)>> = match axes.as_slice() {
        [(p, values)] => values.iter().map(|&v| vec![(*p, v)]).collect(),
        [(p1, v1), (p2, v2)] => v1
            .iter()
            .flat_map(|&a| v2.iter().map(move |&b| vec![(*p1, a), (*p2, b)]))
            .collect(),
        _ => unreachable!(),
    };

    let rows: Vec<String> = cells
        .par_iter()
        .map(|assignments| {
            let mut cfg = *base;
            for (param, value) in assignments {
                param.apply(&mut cfg, *value);
            }
            let regime = classify_two_population(&cfg).ok();
            let (regime_name, x1_star, n_star) = match &regime {
                Some(RegimeLabel2Pop::Tragedy) => ("tragedy", None, None),
                Some(RegimeLabel2Pop::Sustained { x1_star, n_star }) => {
                    ("sustained", Some(*x1_star), Some(*n_star))
                }
                Some(RegimeLabel2Pop::LineSegment { .. }) => ("line_segment", None, None),
                None => ("", None, None),
            };
            let exploit = optimal_consumption(&cfg.pop1).ok();
            let (alpha2_star, r_star, u_star) = match &exploit {
                Some(res) => (Some(res.alpha2_star), Some(res.resource), Some(res.utility)),
                None => (None, None, None),
            };

            let mut row: Vec<String> =
                assignments.iter().map(|(_, v)| fmt_f64(*v)).collect();
            row.push(regime_name.into());
            row.push(csv_field(x1_star));
            row.push(csv_field(n_star));
            row.push(csv_field(alpha2_star));
            row.push(csv_field(r_star));
            row.push(csv_field(u_star));
            row.join(",")
        })
        .collect();

    let header = if axes.len() == 1 {
        "varied_value,regime,x1_star,n_star,alpha2_star,R_star,U_star"
    } else {
        "varied_value,varied_value2,regime,x1_star,n_star,alpha2_star,R_star,U_star"
    };
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}
