//! One line per acceptance criterion, each run at the suites' default
//! budgets. Thresholds are pinned here so a change of defaults cannot
//! quietly weaken a criterion.

use std::process::ExitCode;

use nilaut_harness::{run_suite, Check, Report, SuiteConfig};
use serde_json::Value;

fn run(suite: &str) -> Result<Report, String> {
    run_suite(&SuiteConfig::new(suite, 0)).map_err(|e| format!("{suite}: {e}"))
}

fn param(c: &Check, key: &str) -> Option<i64> {
    c.params.get(key).and_then(Value::as_i64)
}

fn named<'a>(r: &'a Report, name: &str) -> Vec<&'a Check> {
    r.checks.iter().filter(|c| c.name == name).collect()
}

/// Every check named `name` passed with at least `trials` trials, and the
/// `(n, s)` points in `points` each have one.
fn covered(r: &Report, name: &str, trials: usize, points: &[(i64, i64)]) -> Result<(), String> {
    let checks = named(r, name);
    if checks.is_empty() {
        return Err(format!("{}: no {name} checks", r.suite));
    }
    for c in &checks {
        if !c.passed() {
            return Err(format!("{} failed ({} failures)", c.label(), c.failures));
        }
        if c.trials < trials {
            return Err(format!("{} ran {} trials, want {trials}", c.label(), c.trials));
        }
    }
    for &(n, s) in points {
        if !checks
            .iter()
            .any(|c| param(c, "n") == Some(n) && param(c, "s") == Some(s))
        {
            return Err(format!("{name} missing at n={n} s={s}"));
        }
    }
    Ok(())
}

fn all_passed(r: &Report) -> Result<(), String> {
    match r.checks.iter().find(|c| !c.passed()) {
        Some(c) => Err(format!("{} is {}", c.label(), c.status.name())),
        None if r.checks.is_empty() => Err(format!("{}: no checks", r.suite)),
        None => Ok(()),
    }
}

const GRID: [(i64, i64); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

fn group_core() -> Result<(), String> {
    let r = run("group-axioms")?;
    all_passed(&r)?;
    for name in ["associativity", "identity-and-inverse", "filtration", "center"] {
        covered(&r, name, 500, &GRID)?;
    }
    covered(&r, "class-2-closed-form", 500, &[(2, 2), (3, 2)])
}

fn lemma_parity() -> Result<(), String> {
    let r = run("lemma-2.2")?;
    all_passed(&r)?;
    for name in ["layer-N", "layer-K"] {
        covered(&r, name, 200, &GRID)?;
        for (n, s) in GRID {
            for m in 1..=s {
                let hit = named(&r, name)
                    .iter()
                    .any(|c| param(c, "n") == Some(n) && param(c, "s") == Some(s) && param(c, "m") == Some(m));
                if !hit {
                    return Err(format!("{name} missing at n={n} s={s} m={m}"));
                }
            }
        }
    }
    Ok(())
}

fn lemma_commutators() -> Result<(), String> {
    let r = run("lemma-2.1")?;
    all_passed(&r)?;
    covered(&r, "commutator-depth", 200, &[(2, 3), (3, 3)])?;
    for m in [1, 2] {
        if !named(&r, "commutator-depth")
            .iter()
            .any(|c| param(c, "s") == Some(3) && param(c, "m") == Some(m))
        {
            return Err(format!("commutator-depth missing at s=3 m={m}"));
        }
    }
    Ok(())
}

fn necessity(r: &Report) -> Result<(), String> {
    covered(r, "necessity", 50 * 50, &GRID)?;
    covered(r, "abelianization-commutes", 50 * 50, &GRID)
}

fn converse(r: &Report) -> Result<(), String> {
    // diag and swap plus 10 conjugates of each
    covered(r, "converse", 22, &GRID)?;
    covered(r, "witness-trace", 1, &[(2, 2), (2, 3)])?;
    covered(r, "canonical-accepted", 1, &GRID)
}

fn eq2() -> Result<(), String> {
    let r = run("eq-2")?;
    all_passed(&r)?;
    let verified: u64 = ["diagonal-family", "swap-family"]
        .iter()
        .flat_map(|n| named(&r, n))
        .filter_map(|c| c.detail.get("identities_verified").and_then(Value::as_u64))
        .sum();
    if verified != 42 {
        return Err(format!("{verified} conjugacy identities verified, want 42"));
    }
    covered(&r, "round-trip", 200, &[])
}

fn xy_and_walks() -> Result<(), String> {
    let xy = run("xy-linearity")?;
    all_passed(&xy)?;
    covered(&xy, "linear-entry", 100, &[])?;
    let walk = run("walk")?;
    all_passed(&walk)?;
    covered(&walk, "noncentral-walk", 100, &[])?;
    let steps = named(&walk, "noncentral-walk")
        .iter()
        .filter_map(|c| param(c, "steps"))
        .min();
    if steps.unwrap_or(0) < 50 {
        return Err(format!("walks of {steps:?} steps, want 50"));
    }
    Ok(())
}

fn one_step_down() -> Result<(), String> {
    let r = run("one-step-down")?;
    all_passed(&r)?;
    covered(&r, "forward", 200, &GRID)?;
    covered(&r, "products", 200, &GRID)?;
    let mut points = Vec::new();
    for n in [2, 3, 4] {
        for s in [2, 3] {
            points.push((n, s));
        }
    }
    covered(&r, "factorization", 1, &points)?;
    // one trial per generator
    for c in named(&r, "factorization") {
        if param(c, "n") != Some(c.trials as i64) {
            return Err(format!("{} covered {} generators", c.label(), c.trials));
        }
    }
    Ok(())
}

fn interpretation() -> Result<(), String> {
    let m = run("interp-M")?;
    all_passed(&m)?;
    covered(&m, "summand-brute-force", 7usize.pow(4), &[])?;
    covered(&m, "diagonalizability-falsifier", 22, &[])?;
    let falsifier = named(&m, "diagonalizability-falsifier");
    if falsifier.iter().any(|c| param(c, "samples").unwrap_or(0) < 500) {
        return Err("falsifier budget below 500 samples".into());
    }
    let endo = run("endo-graph")?;
    all_passed(&endo)?;
    covered(&endo, "roundtrip", 100, &[])?;
    let ring = run("ring-Z")?;
    all_passed(&ring)?;
    covered(&ring, "addition", 41 * 41, &[])?;
    covered(&ring, "multiplication", 41 * 41, &[])
}

/// Small configurations of every suite, each run twice.
fn determinism() -> Result<(), String> {
    let configs: [(&str, Option<usize>, Option<usize>); 11] = [
        ("group-axioms", Some(5), None),
        ("lemma-2.1", Some(5), None),
        ("lemma-2.2", Some(5), None),
        ("proposition-sigma", Some(2), Some(2)),
        ("eq-2", Some(5), None),
        ("xy-linearity", Some(5), None),
        ("walk", Some(5), Some(10)),
        ("one-step-down", Some(5), Some(2)),
        ("interp-M", Some(2), Some(20)),
        ("ring-Z", Some(5), None),
        ("endo-graph", Some(5), None),
    ];
    for (suite, trials, samples) in configs {
        let mut cfg = SuiteConfig::new(suite, 11);
        cfg.trials = trials;
        cfg.samples = samples;
        let a = run_suite(&cfg).map_err(|e| format!("{suite}: {e}"))?.to_canonical();
        let b = run_suite(&cfg).map_err(|e| format!("{suite}: {e}"))?.to_canonical();
        if a != b {
            return Err(format!("{suite}: reports differ"));
        }
    }
    Ok(())
}

type Criterion<'a> = Box<dyn Fn() -> Result<(), String> + 'a>;

fn main() -> ExitCode {
    let sigma = run("proposition-sigma");
    let sigma = &sigma;
    let on_sigma = |f: fn(&Report) -> Result<(), String>| move || sigma.as_ref().map_err(Clone::clone).and_then(f);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("group core", Box::new(group_core)),
        ("parity on layers", Box::new(lemma_parity)),
        ("[IA, K_m] in K_m+1", Box::new(lemma_commutators)),
        ("sigma necessity", Box::new(on_sigma(necessity))),
        ("sigma converse and witness trace", Box::new(on_sigma(converse))),
        ("GL(2,Z) involution conjugacies", Box::new(eq2)),
        ("X/Y linearity and walks", Box::new(xy_and_walks)),
        ("one-step-down", Box::new(one_step_down)),
        ("interpretation layer", Box::new(interpretation)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        match f() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
