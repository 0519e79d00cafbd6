//! Running configured checks and the JSON report document.
//!
//! Every result entry has exactly the keys `name, lhs, rhs, ratio, residual,
//! tolerance, passed, config`; fields that do not apply are `null`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{Check, RunConfig};
use crate::error::Result;
use crate::inequality::{Evaluated, InequalityReport, Region, SLACK};
use crate::signal::generate_signal;
use crate::verify::{
    verify_linearity, verify_oclct_oft_relation, verify_parity, verify_reassembly, verify_shift,
    PropertyResidual,
};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntry {
    pub name: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub ratio: Option<f64>,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    /// What produced this entry: kind, direction, constants, labels.
    pub config: Value,
}

impl From<PropertyResidual> for ReportEntry {
    fn from(r: PropertyResidual) -> Self {
        Self {
            name: r.name,
            lhs: None,
            rhs: None,
            ratio: None,
            residual: Some(r.residual),
            tolerance: r.tolerance,
            passed: r.passed,
            config: json!({ "kind": "property" }),
        }
    }
}

impl ReportEntry {
    fn inequality(r: InequalityReport, slack: f64) -> Self {
        Self {
            name: r.name,
            lhs: Some(r.lhs),
            rhs: Some(r.rhs),
            ratio: r.ratio,
            residual: None,
            tolerance: slack,
            passed: r.satisfied,
            config: json!({
                "kind": "inequality",
                "direction": r.direction,
                "details": r.details,
                "signal": r.signal,
                "window": r.window,
                "params": r.params,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub passed: bool,
    pub config: Value,
    pub outputs: Vec<String>,
    pub results: Vec<ReportEntry>,
}

impl Report {
    pub fn new(
        command: &str,
        config: &RunConfig,
        results: Vec<ReportEntry>,
        outputs: Vec<String>,
    ) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            seed: config.seed,
            passed: results.iter().all(|r| r.passed),
            config: serde_json::to_value(config).expect("config serializes"),
            outputs,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the property checks named in `checks` (all of them when empty).
pub fn run_properties(config: &RunConfig, checks: &[Check]) -> Result<Vec<ReportEntry>> {
    let p = config.prepare()?;
    let mut out = Vec::new();
    for &check in checks.iter().filter(|c| c.is_property()) {
        let r = match check {
            Check::Reassembly => verify_reassembly(&p.f, &p.w, &config.params, &p.grids)?,
            Check::Parity => verify_parity(&p.f, &p.w, &config.params, &p.grids)?,
            Check::Shift => {
                let axis = config.shift.axis - 1;
                let s = config.shift.steps as f64 * config.grids.t.axes[axis].spacing;
                verify_shift(&p.f, &p.w, &config.params, &p.grids, axis, s)?
            }
            Check::OclctOft => verify_oclct_oft_relation(&p.f, &p.grids.omega)?,
            Check::Linearity => {
                let g = generate_signal(&config.linearity.second_signal, &config.grids.t)?;
                let (eta, lambda) = (config.linearity.eta, config.linearity.lambda);
                verify_linearity(&p.f, &g, eta, lambda, &p.w, &config.params, &p.grids)?
            }
            _ => unreachable!("filtered to properties"),
        };
        let r = match config.tolerances.get(&check) {
            Some(&tol) => PropertyResidual::new(r.name, r.residual, tol),
            None => r,
        };
        out.push(r.into());
    }
    Ok(out)
}

/// Runs the inequality checks named in `checks` on one shared transform.
pub fn run_inequalities(config: &RunConfig, checks: &[Check]) -> Result<Vec<ReportEntry>> {
    let checks: Vec<Check> = checks
        .iter()
        .copied()
        .filter(|c| !c.is_property())
        .collect();
    if checks.is_empty() {
        return Ok(Vec::new());
    }
    let p = config.prepare()?;
    let e = Evaluated::new(&p.f, &p.w, &config.params, &p.grids)?;
    let (sig, win) = (config.signal.label(), config.window.label());
    let mut out = Vec::new();
    for check in checks {
        let slack = config.tolerances.get(&check).copied().unwrap_or(SLACK);
        let reports = match check {
            Check::Pitt => config
                .betas
                .iter()
                .map(|&b| e.pitt(b))
                .collect::<Result<Vec<_>>>()?,
            Check::Logarithmic => vec![e.log_uncertainty()?],
            Check::YoungHausdorff => config
                .young_ps
                .iter()
                .map(|&q| e.young_hausdorff(q))
                .collect::<Result<Vec<_>>>()?,
            Check::Heisenberg => vec![e.heisenberg()?],
            Check::DonohoStark => {
                let ds = &config.donoho_stark;
                let sigma = Region::boxed(p.f.grid, [0.0; 3], ds.sigma_half_width);
                let tau = Region::boxed(p.grids.omega, [0.0; 3], ds.tau_half_width);
                vec![e.donoho_stark(&sigma, &tau)?]
            }
            _ => unreachable!("filtered to inequalities"),
        };
        out.extend(reports.into_iter().map(|r| {
            ReportEntry::inequality(
                r.labelled(sig.clone(), win.clone()).with_slack(slack),
                slack,
            )
        }));
    }
    Ok(out)
}
