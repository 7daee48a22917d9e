//! Suite dispatch and report assembly.

use serde_json::{json, Value};

use crate::config::{resolve, Plan, Point, Suite};
use crate::report::{Check, Report};
use crate::{Result, SuiteConfig};

mod group;
mod layer;
mod lemmas;
mod matrices;
mod sigma;

pub(crate) fn point_params(p: Point) -> Value {
    json!({"n": p.n, "s": p.s})
}

fn config_echo(cfg: &SuiteConfig, plan: &Plan) -> Value {
    json!({
        "suite": plan.suite.name(),
        "rank": cfg.rank,
        "class": cfg.class,
        "ranks": plan.ranks,
        "grid": plan.grid.iter().map(|p| json!([p.n, p.s])).collect::<Vec<_>>(),
        "trials": plan.trials,
        "seed": plan.seed,
        "m-range": plan.m_range.map(|(a, b)| json!([a, b])),
        "samples": plan.samples,
    })
}

/// Runs the configured suite. Unset parameters take the defaults, which
/// are the acceptance budgets; the same config always yields the same
/// report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let plan = resolve(cfg)?;
    let checks: Vec<Check> = match plan.suite {
        Suite::GroupAxioms => group::run(&plan)?,
        Suite::Lemma21 => lemmas::run_commutators(&plan)?,
        Suite::Lemma22 => lemmas::run_parity(&plan)?,
        Suite::PropositionSigma => sigma::run(&plan)?,
        Suite::Eq2 => matrices::run_eq2(&plan)?,
        Suite::XyLinearity => matrices::run_xy(&plan)?,
        Suite::Walk => matrices::run_walk(&plan)?,
        Suite::OneStepDown => layer::run_one_step_down(&plan)?,
        Suite::InterpM => layer::run_interp_m(&plan)?,
        Suite::RingZ => layer::run_ring(&plan)?,
        Suite::EndoGraph => layer::run_endo_graph(&plan)?,
    };
    let mut report = Report::new(plan.suite.name(), plan.suite.anchor(), config_echo(cfg, &plan));
    report.checks = checks;
    Ok(report)
}
