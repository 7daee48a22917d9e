//! lemma-2.1 and lemma-2.2: commutators of IA with `K_m`, and the parity
//! action of symmetries on the layers of both filtrations.

use std::sync::Arc;

use nilaut::json::{element, endomorphism};
use nilaut::nilgroup::GroupContext;
use nilaut::sample::{random_automorphism, random_element_of_weight, random_k_element, trial_rng};
use nilaut::{BigInt, Context, Endo};
use serde_json::json;

use super::point_params;
use crate::config::Plan;
use crate::report::Check;
use crate::runner::{check_seed, columns, par_map, require, Outcome, Spec};
use crate::Result;

pub(crate) fn run_commutators(plan: &Plan) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &p in &plan.grid {
        let ctx = GroupContext::<BigInt>::new(p.n, p.s)?;
        for m in 1..p.s {
            let seed = check_seed(plan.seed, &format!("lemma-2.1 n={} s={} m={m}", p.n, p.s));
            let outcomes = par_map(plan.trials, |t| {
                let mut rng = trial_rng(seed, t as u64);
                let gamma = random_k_element(&ctx, 1, 3, &mut rng);
                let delta = random_k_element(&ctx, m, 3, &mut rng);
                let comm = gamma
                    .inverse()?
                    .compose(&delta.inverse()?)?
                    .compose(&gamma)?
                    .compose(&delta)?;
                let depth = comm.k_depth();
                Ok(require(depth > m, || {
                    json!({
                        "gamma": endomorphism(&gamma),
                        "delta": endomorphism(&delta),
                        "commutator": endomorphism(&comm),
                        "depth": depth,
                    })
                }))
            });
            let mut params = point_params(p);
            params["m"] = json!(m);
            out.push(
                Spec {
                    name: "commutator-depth",
                    statement: "gamma in IA, delta in K_m: gamma^-1 delta^-1 gamma delta lies in K_{m+1}",
                    params,
                    seed: Some(seed),
                }
                .fold(outcomes),
            );
        }
    }
    Ok(out)
}

/// The canonical symmetry and `count` conjugates of it.
pub(crate) fn symmetries(ctx: &Arc<Context>, count: usize, seed: u64) -> Result<Vec<Endo>> {
    let theta = Endo::canonical_symmetry(ctx);
    let conj = par_map(count, |i| {
        let (b, binv) = random_automorphism(ctx, &mut trial_rng(seed, i as u64));
        theta.conjugate_with(&b, &binv)
    });
    let mut out = vec![theta.clone()];
    for c in conj {
        out.push(c?);
    }
    Ok(out)
}

pub(crate) const CONJUGATES: usize = 20;

pub(crate) fn run_parity(plan: &Plan) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &p in &plan.grid {
        let ctx = GroupContext::<BigInt>::new(p.n, p.s)?;
        let sym_seed = check_seed(plan.seed, &format!("lemma-2.2 symmetries n={} s={}", p.n, p.s));
        let thetas = symmetries(&ctx, CONJUGATES, sym_seed)?;
        for m in 1..=p.s {
            let seed = check_seed(plan.seed, &format!("lemma-2.2 n={} s={} m={m}", p.n, p.s));
            let rows = par_map(plan.trials, |t| {
                let mut rng = trial_rng(seed, t as u64);
                let theta = &thetas[t % thetas.len()];
                let c = random_element_of_weight(&ctx, m, 4, &mut rng);
                let gamma = random_k_element(&ctx, m, 3, &mut rng);
                vec![on_elements(theta, &c, m), on_automorphisms(theta, &gamma, m)]
            });
            let statements = [
                ("layer-N", "theta(c) c^{-(-1)^m} lies in N_{m+1} for c of weight m"),
                (
                    "layer-K",
                    "theta gamma theta^-1 gamma^{-(-1)^m} lies in K_{m+1} for gamma in K_m",
                ),
            ];
            for ((name, statement), outcomes) in statements.iter().zip(columns(rows, 2)) {
                let mut params = point_params(p);
                params["m"] = json!(m);
                let mut c = Spec {
                    name,
                    statement,
                    params,
                    seed: Some(seed),
                }
                .fold(outcomes);
                c.detail = json!({
                    "symmetries": thetas.len(),
                    "symmetry_seed": sym_seed,
                    "action": if m % 2 == 0 { "trivial" } else { "inversion" },
                });
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn on_elements(theta: &Endo, c: &nilaut::Element, m: usize) -> Outcome {
    let image = theta.apply(c)?;
    let residue = if m.is_multiple_of(2) {
        image.multiply(&c.invert())?
    } else {
        image.multiply(c)?
    };
    Ok(require(
        residue.weight() > m,
        || json!({"theta": endomorphism(theta), "c": element(c), "residue": element(&residue)}),
    ))
}

fn on_automorphisms(theta: &Endo, gamma: &Endo, m: usize) -> Outcome {
    let conj = theta.compose(gamma)?.compose(theta)?;
    let residue = if m.is_multiple_of(2) {
        conj.compose(&gamma.inverse()?)?
    } else {
        conj.compose(gamma)?
    };
    let depth = residue.k_depth();
    Ok(require(
        depth > m,
        || json!({"theta": endomorphism(theta), "gamma": endomorphism(gamma), "depth": depth}),
    ))
}
