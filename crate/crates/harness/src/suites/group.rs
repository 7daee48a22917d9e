//! group-axioms: the group laws of `N`, its lower central series, the
//! center `N_s`, and class-2 multiplication against the closed form.

use std::collections::HashMap;
use std::sync::Arc;

use nilaut::json::element;
use nilaut::nilgroup::GroupContext;
use nilaut::sample::{random_element, random_element_of_weight, trial_rng};
use nilaut::{BigInt, Context, Element};
use rand::Rng;
use serde_json::json;

use super::point_params;
use crate::config::Plan;
use crate::report::Check;
use crate::runner::{check_seed, columns, par_map, require, Outcome, Spec};
use crate::Result;

const CHECKS: [(&str, &str); 6] = [
    ("associativity", "(gh)k = g(hk)"),
    (
        "identity-and-inverse",
        "g1 = 1g = g, g g^-1 = g^-1 g = 1, g^-1 = g^(-1) as a power, g^3 = ggg",
    ),
    ("projection", "N -> N/N_{m+1} is a homomorphism for every m <= s"),
    (
        "filtration",
        "N_a is a subgroup, elements of N_a \\ N_{a+1} have weight a, [N_a, N_b] lies in N_{a+b}",
    ),
    ("center", "elements of N_s commute with everything"),
    (
        "class-2-closed-form",
        "on class-2 projections, x^a[..]^c x^b[..]^d has [xi,xj] exponent c + d + a_i b_j (i > j)",
    ),
];

pub(crate) fn run(plan: &Plan) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &p in &plan.grid {
        let ctx = GroupContext::<BigInt>::new(p.n, p.s)?;
        let seed = check_seed(plan.seed, &format!("group-axioms n={} s={}", p.n, p.s));
        let rows = par_map(plan.trials, |t| trial(&ctx, seed, t));
        for ((name, statement), outcomes) in CHECKS.iter().zip(columns(rows, CHECKS.len())) {
            out.push(
                Spec {
                    name,
                    statement,
                    params: point_params(p),
                    seed: Some(seed),
                }
                .fold(outcomes),
            );
        }
    }
    Ok(out)
}

fn trial(ctx: &Arc<Context>, seed: u64, t: usize) -> Vec<Outcome> {
    let mut rng = trial_rng(seed, t as u64);
    let s = ctx.class();
    let g = random_element(ctx, 1, 5, &mut rng);
    let h = random_element(ctx, 1, 5, &mut rng);
    let k = random_element(ctx, 1, 5, &mut rng);
    let a = rng.gen_range(1..=s);
    let b = rng.gen_range(1..=s);
    let ga = random_element_of_weight(ctx, a, 4, &mut rng);
    let ga2 = random_element(ctx, a, 4, &mut rng);
    let hb = random_element_of_weight(ctx, b, 4, &mut rng);
    let z = random_element(ctx, s, 5, &mut rng);
    vec![
        associativity(&g, &h, &k),
        identity_inverse(&g),
        projection(&g, &h),
        filtration(&ga, &ga2, &hb, a, b),
        center(&z, &g),
        closed_form_agreement(&g, &h),
    ]
}

fn associativity(g: &Element, h: &Element, k: &Element) -> Outcome {
    let lhs = g.multiply(h)?.multiply(k)?;
    let rhs = g.multiply(&h.multiply(k)?)?;
    Ok(require(
        lhs == rhs,
        || json!({"g": element(g), "h": element(h), "k": element(k), "(gh)k": element(&lhs), "g(hk)": element(&rhs)}),
    ))
}

fn identity_inverse(g: &Element) -> Outcome {
    let one = Element::identity(g.context());
    let inv = g.invert();
    let ok = g.multiply(&one)? == *g
        && one.multiply(g)? == *g
        && g.multiply(&inv)?.is_identity()
        && inv.multiply(g)?.is_identity()
        && g.power(&BigInt::from(-1)) == inv
        && g.power(&BigInt::from(3)) == g.multiply(g)?.multiply(g)?
        && g.power(&BigInt::from(0)).is_identity();
    Ok(require(ok, || json!({"g": element(g), "g^-1": element(&inv)})))
}

fn projection(g: &Element, h: &Element) -> Outcome {
    let gh = g.multiply(h)?;
    for m in 1..=g.context().class() {
        let lhs = gh.project_to_class(m)?;
        let rhs = g.project_to_class(m)?.multiply(&h.project_to_class(m)?)?;
        if lhs != rhs {
            return Ok(Some(json!({"g": element(g), "h": element(h), "m": m})));
        }
    }
    Ok(None)
}

fn filtration(ga: &Element, ga2: &Element, hb: &Element, a: usize, b: usize) -> Outcome {
    let s = ga.context().class();
    let c = ga.commutator(hb)?;
    let ok = ga.weight() == a
        && hb.weight() == b
        && ga2.weight() >= a
        && ga.multiply(ga2)?.weight() >= a
        && ga.invert().weight() == a
        && if a + b <= s {
            c.weight() >= a + b
        } else {
            c.is_identity()
        };
    Ok(require(
        ok,
        || json!({"a": a, "b": b, "g_a": element(ga), "g_a'": element(ga2), "h_b": element(hb), "[g_a,h_b]": element(&c)}),
    ))
}

fn center(z: &Element, g: &Element) -> Outcome {
    let zg = z.multiply(g)?;
    let gz = g.multiply(z)?;
    Ok(require(
        zg == gz && z.weight() >= z.context().class(),
        || json!({"z": element(z), "g": element(g)}),
    ))
}

/// Position of `[xi,xj]` (0-based `i > j`) found from the printed labels,
/// independent of how the engine orders its basis.
fn bracket_index(ctx: &Context) -> HashMap<(usize, usize), usize> {
    let n = ctx.rank();
    let mut out = HashMap::new();
    if ctx.class() < 2 {
        return out;
    }
    for k in ctx.weight_range(2) {
        let label = ctx.label(k);
        for i in 0..n {
            for j in 0..n {
                if label == format!("[x{},x{}]", i + 1, j + 1) {
                    out.insert((i, j), k);
                }
            }
        }
    }
    out
}

fn closed_form(ctx: &Context, g: &[BigInt], h: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut out: Vec<BigInt> = g.iter().zip(h).map(|(x, y)| x + y).collect();
    for ((i, j), k) in bracket_index(ctx) {
        if i <= j {
            return None;
        }
        out[k] += &g[i] * &h[j];
    }
    Some(out)
}

fn closed_form_agreement(g: &Element, h: &Element) -> Outcome {
    let m = g.context().class().min(2);
    let (g2, h2) = (g.project_to_class(m)?, h.project_to_class(m)?);
    let engine = g.multiply(h)?.project_to_class(m)?;
    let oracle = closed_form(g2.context(), g2.exponents(), h2.exponents());
    Ok(require(
        oracle.as_deref() == Some(engine.exponents()),
        || json!({"g": element(&g2), "h": element(&h2), "engine": element(&engine)}),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_on_generators() {
        let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
        let x1 = Element::generator(&ctx, 0).unwrap();
        let x2 = Element::generator(&ctx, 1).unwrap();
        assert!(closed_form_agreement(&x2, &x1).unwrap().is_none());
        let want: Vec<BigInt> = [1, 1, 1].map(BigInt::from).to_vec();
        assert_eq!(closed_form(&ctx, x2.exponents(), x1.exponents()), Some(want));
    }
}
