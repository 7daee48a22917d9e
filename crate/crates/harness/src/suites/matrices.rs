//! eq-2, xy-linearity and walk: the GL(2,Z) side of the construction.

use std::collections::BTreeMap;

use nilaut::glz::gl2::{
    family_involution, linearity_profile, noncentral_sigma_walk_within, step_mode, xy_matrix, xy_matrix_oriented,
    LinearityProfile, WalkStep,
};
use nilaut::glz::{classify_involution2, InvolutionClass, Matrix, Mode, Orientation, Parity};
use nilaut::json::{matrix, walk_step};
use nilaut::sample::{random_unimodular, trial_rng};
use nilaut::{BigInt, IntMatrix, Mod61, Ring};
use rand::Rng;
use serde_json::{json, Value};

use crate::config::Plan;
use crate::report::Check;
use crate::runner::{check_seed, par_map, require, Outcome, Spec};
use crate::Result;

const PARITIES: [Parity; 2] = [Parity::Even, Parity::Odd];

/// A non-central unimodular 2x2 matrix.
fn noncentral<G: Rng>(rng: &mut G) -> IntMatrix {
    loop {
        let m: IntMatrix = random_unimodular(2, rng);
        if !m.is_central2() {
            return m;
        }
    }
}

fn conjugates_to(p: &IntMatrix, rep: &IntMatrix, target: &IntMatrix) -> nilaut::Result<bool> {
    Ok(p.is_unimodular() && &(p * rep) * &p.inverse_unimodular()? == *target)
}

pub(crate) fn run_eq2(plan: &Plan) -> Result<Vec<Check>> {
    let (a, b) = plan.m_range();
    let mut out = Vec::new();
    for parity in PARITIES {
        let class = parity.class();
        let rep: IntMatrix = class.representative();
        let results: Vec<(Outcome, Option<Value>)> = (a..=b)
            .map(|m| {
                let f: IntMatrix = family_involution(m, parity, Orientation::Lower);
                let r = (|| {
                    let (got, p) = classify_involution2(&f)?;
                    let ok = got == class && conjugates_to(&p, &rep, &f)?;
                    Ok((ok, p))
                })();
                match r {
                    Ok((true, p)) => (
                        Ok(None),
                        Some(json!({"m": m, "involution": matrix(&f), "conjugator": matrix(&p)})),
                    ),
                    Ok((false, p)) => (
                        Ok(Some(
                            json!({"m": m, "involution": matrix(&f), "conjugator": matrix(&p)}),
                        )),
                        None,
                    ),
                    Err(e) => (Err(e), None),
                }
            })
            .collect();
        let (outcomes, certs): (Vec<_>, Vec<_>) = results.into_iter().unzip();
        let certs: Vec<Value> = certs.into_iter().flatten().collect();
        let (name, statement) = match parity {
            Parity::Even => ("diagonal-family", "(1 0; 2m -1) = P diag(1,-1) P^-1 with P unimodular"),
            Parity::Odd => ("swap-family", "(1 0; 2m-1 -1) = P (0 1; 1 0) P^-1 with P unimodular"),
        };
        let mut c = Spec {
            name,
            statement,
            params: json!({"m_min": a, "m_max": b}),
            seed: None,
        }
        .fold(outcomes);
        c.detail = json!({"identities_verified": certs.len()});
        c.certificate = Some(json!({ "conjugators": certs }));
        out.push(c);
    }
    let seed = check_seed(plan.seed, "eq-2 round-trip");
    let outcomes = par_map(plan.trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let class = match t % 10 {
            8 => InvolutionClass::PlusIdentity,
            9 => InvolutionClass::MinusIdentity,
            k if k % 2 == 0 => InvolutionClass::Diagonal,
            _ => InvolutionClass::Swap,
        };
        let rep: IntMatrix = class.representative();
        let q: IntMatrix = random_unimodular(2, &mut rng);
        let f = &(&q * &rep) * &q.inverse_unimodular()?;
        let (got, p) = classify_involution2(&f)?;
        let ok = got == class && conjugates_to(&p, &rep, &f)?;
        Ok(require(
            ok,
            || json!({"involution": matrix(&f), "built_from": class.name(), "classified_as": got.name(), "conjugator": matrix(&p)}),
        ))
    });
    out.push(
        Spec {
            name: "round-trip",
            statement: "an involution Q rep Q^-1 is classified as rep with a unimodular P, P rep P^-1 exact",
            params: json!({}),
            seed: Some(seed),
        }
        .fold(outcomes),
    );
    Ok(out)
}

fn mode_name(mode: Mode, parity: Parity) -> String {
    format!("{mode:?}/{parity:?}")
}

/// Second and first differences over `m = 0, 1, 2` in the transposed
/// family.
fn upper_profile(s: &IntMatrix, mode: Mode, parity: Parity) -> nilaut::Result<Vec<usize>> {
    let v: Vec<IntMatrix> = (0..3)
        .map(|m| xy_matrix_oriented(s, m, mode, parity, Orientation::Upper))
        .collect::<nilaut::Result<_>>()?;
    Ok((0..4)
        .filter(|&i| {
            let e = |k: usize| v[k][(i / 2, i % 2)].clone();
            let first = e(1) - e(0);
            let second = e(2) - e(1) * BigInt::from(2) + e(0);
            second == BigInt::from(0) && first != BigInt::from(0)
        })
        .collect())
}

pub(crate) fn run_xy(plan: &Plan) -> Result<Vec<Check>> {
    let seed = check_seed(plan.seed, "xy-linearity");
    let rows = par_map(plan.trials, |t| -> (Outcome, Vec<String>, bool) {
        let s = noncentral(&mut trial_rng(seed, t as u64));
        let mut notes = Vec::new();
        let mut fallback = false;
        for mode in [Mode::X, Mode::Y] {
            for parity in PARITIES {
                let lower: LinearityProfile<BigInt> = match linearity_profile(&s, mode, parity) {
                    Ok(p) => p,
                    Err(e) => return (Err(e), notes, fallback),
                };
                let key = mode_name(mode, parity);
                if !lower.linear_entries.is_empty() {
                    notes.push(format!("{key}:lower:{:?}", lower.linear_entries));
                    continue;
                }
                let upper = match upper_profile(&s, mode, parity) {
                    Ok(u) => u,
                    Err(e) => return (Err(e), notes, fallback),
                };
                fallback = true;
                notes.push(format!("{key}:upper:{upper:?}"));
                if upper.is_empty() {
                    let w = json!({"S": matrix(&s), "mode": format!("{mode:?}"), "parity": format!("{parity:?}")});
                    return (Ok(Some(w)), notes, fallback);
                }
            }
        }
        (Ok(None), notes, fallback)
    });
    let mut outcomes = Vec::new();
    let mut per_input = Vec::new();
    let mut tracked: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    let mut fallbacks = 0;
    for (o, notes, fb) in rows {
        outcomes.push(o);
        fallbacks += usize::from(fb);
        for n in &notes {
            let (key, rest) = n.split_once(':').expect("key:orientation:entries");
            *tracked
                .entry(key.to_string())
                .or_default()
                .entry(rest.to_string())
                .or_default() += 1;
        }
        per_input.push(notes);
    }
    let mut c = Spec {
        name: "linear-entry",
        statement: "for non-central S, some entry of X(m) and of Y(m) has zero second and nonzero first difference over m = 0, 1, 2",
        params: json!({}),
        seed: Some(seed),
    }
    .fold(outcomes);
    c.detail = json!({
        "entries": "row-major 0..3; entry 1 is (1,2)",
        "upper_fallbacks": fallbacks,
        "linear_entries_histogram": tracked,
        "linear_entries_per_input": per_input,
    });
    let (a, b) = plan.m_range();
    let swap = IntMatrix::from_i64(&[[0, 1], [1, 0]]);
    let closed: Vec<Outcome> = (a..=b)
        .map(|m| {
            let want = IntMatrix::from_i64(&[[-1, 2 * m], [-2 * m, 4 * m * m - 1]]);
            let x = xy_matrix(&swap, m, Mode::X, Parity::Even)?;
            let y = xy_matrix(&swap, m, Mode::Y, Parity::Even)?;
            Ok(require(
                x == want && y == want,
                || json!({"m": m, "X": matrix(&x), "Y": matrix(&y)}),
            ))
        })
        .collect();
    let swap_check = Spec {
        name: "swap-closed-form",
        statement: "for S = (0 1; 1 0) and even parity, X(m) = Y(m) = (-1 2m; -2m 4m^2-1)",
        params: json!({"m_min": a, "m_max": b}),
        seed: None,
    }
    .fold(closed);
    Ok(vec![c, swap_check, lower_triangular()])
}

/// `(e 0; c f)` with signs `e, f` and `0 < |c| <= 3`: the degenerate
/// inputs for the lower family, where the transposed family takes over.
fn lower_triangular() -> Check {
    let mut inputs = Vec::new();
    for e in [1, -1] {
        for f in [1, -1] {
            for c in (-3..=3).filter(|&c| c != 0) {
                inputs.push([[e, 0], [c, f]]);
            }
        }
    }
    let mut lower_empty = BTreeMap::<String, usize>::new();
    let outcomes: Vec<Outcome> = inputs
        .iter()
        .map(|m| {
            let s = IntMatrix::from_i64(m);
            for mode in [Mode::X, Mode::Y] {
                for parity in PARITIES {
                    if !linearity_profile(&s, mode, parity)?.linear_entries.is_empty() {
                        continue;
                    }
                    *lower_empty.entry(mode_name(mode, parity)).or_default() += 1;
                    if upper_profile(&s, mode, parity)?.is_empty() {
                        return Ok(Some(
                            json!({"S": matrix(&s), "mode": format!("{mode:?}"), "parity": format!("{parity:?}")}),
                        ));
                    }
                }
            }
            Ok(None)
        })
        .collect();
    let mut c = Spec {
        name: "lower-triangular",
        statement: "for lower-triangular S some entry is linear in the lower family or, failing that, in the transposed family",
        params: json!({"c": [-3, 3]}),
        seed: None,
    }
    .fold(outcomes);
    c.detail = json!({ "lower_family_without_linear_entry": lower_empty });
    c
}

fn to_mod61(m: &IntMatrix) -> Matrix<Mod61> {
    m.map(Mod61::from_bigint)
}

fn central<R: Ring>(m: &Matrix<R>) -> bool {
    let z = R::zero();
    m[(0, 1)] == z && m[(1, 0)] == z && m[(0, 0)] == m[(1, 1)]
}

/// Replays a walk from its recorded involutions.
fn replay<R: Ring>(s0: &Matrix<R>, walk: &[WalkStep<R>], parity: Parity) -> nilaut::Result<Option<usize>> {
    let mut cur = s0.clone();
    for (t, step) in walk.iter().enumerate() {
        let f: Matrix<R> = family_involution(step.m, parity, step.orientation);
        let last = match step_mode(t) {
            Mode::X => cur.clone(),
            Mode::Y => cur.inverse2_unimodular()?,
        };
        let next = &(&(&f * &cur) * &f) * &last;
        let ok = step.mode == step_mode(t)
            && step.parity == parity
            && step.involution == f
            && (&f * &f).is_identity()
            && step.term == next
            && !central(&next);
        if !ok {
            return Ok(Some(t));
        }
        cur = next;
    }
    Ok(None)
}

/// Steps recomputed over the integers and compared with the mod-p walk.
const EXACT_STEPS: usize = 5;

pub(crate) fn run_walk(plan: &Plan) -> Result<Vec<Check>> {
    let steps = plan.samples();
    let bound = plan.m_bound();
    let seed = check_seed(plan.seed, "walk");
    let rows = par_map(plan.trials, |t| -> (Vec<Outcome>, usize, i64) {
        let mut rng = trial_rng(seed, t as u64);
        let s0 = loop {
            let s = noncentral(&mut rng);
            if !to_mod61(&s).is_central2() {
                break s;
            }
        };
        let sp = to_mod61(&s0);
        let mut fallbacks = 0;
        let mut max_m = 0;
        let mut walk_ok = Vec::new();
        let mut exact_ok = Vec::new();
        for parity in PARITIES {
            let inputs = |extra: Value| json!({"S0": matrix(&s0), "parity": format!("{parity:?}"), "steps": steps, "detail": extra});
            let walk = match noncentral_sigma_walk_within(&sp, steps, parity, bound) {
                Ok(w) => w,
                Err(e) => {
                    walk_ok.push(Err(e.clone()));
                    exact_ok.push(Err(e));
                    continue;
                }
            };
            fallbacks += walk.iter().filter(|w| w.orientation == Orientation::Upper).count();
            max_m = max_m.max(walk.iter().map(|w| w.m.abs()).max().unwrap_or(0));
            walk_ok.push(
                replay(&sp, &walk, parity)
                    .map(|bad| bad.map(|k| inputs(json!({"bad_step": k, "step": walk_step(&walk[k])})))),
            );
            let k = steps.min(EXACT_STEPS);
            exact_ok.push(noncentral_sigma_walk_within(&s0, k, parity, bound).map(|exact| {
                let agree = replay(&s0, &exact, parity).ok().flatten().is_none()
                    && exact
                        .iter()
                        .zip(&walk)
                        .all(|(e, w)| e.m == w.m && e.orientation == w.orientation && to_mod61(&e.term) == w.term);
                require(agree, || {
                    inputs(json!({"exact": exact.iter().map(walk_step).collect::<Vec<_>>()}))
                })
            }));
        }
        let fold = |v: Vec<Outcome>| v.into_iter().find(|o| !matches!(o, Ok(None))).unwrap_or(Ok(None));
        (vec![fold(walk_ok), fold(exact_ok)], fallbacks, max_m)
    });
    let mut walk_outcomes = Vec::new();
    let mut exact_outcomes = Vec::new();
    let mut fallbacks = 0;
    let mut max_m = 0;
    for (mut o, fb, m) in rows {
        exact_outcomes.push(o.pop().expect("two outcomes"));
        walk_outcomes.push(o.pop().expect("two outcomes"));
        fallbacks += fb;
        max_m = max_m.max(m);
    }
    let mut walk_check = Spec {
        name: "noncentral-walk",
        statement: "walks of the given length in both parities, computed mod 2^61-1, replay exactly and contain no central term",
        params: json!({"steps": steps, "m_bound": bound}),
        seed: Some(seed),
    }
    .fold(walk_outcomes);
    walk_check.detail = json!({
        "modulus": nilaut::scalar::MERSENNE_61,
        "upper_fallback_steps": fallbacks,
        "max_abs_m": max_m,
    });
    let exact_check = Spec {
        name: "exact-agreement",
        statement:
            "the first steps of each walk computed over Z choose the same involutions and reduce to the mod-p terms",
        params: json!({"steps": steps.min(EXACT_STEPS), "m_bound": bound}),
        seed: Some(seed),
    }
    .fold(exact_outcomes);
    Ok(vec![walk_check, exact_check, walk_examples(bound)])
}

fn walk_examples(bound: i64) -> Check {
    let swap = IntMatrix::from_i64(&[[0, 1], [1, 0]]);
    let unipotent = IntMatrix::from_i64(&[[1, 1], [0, 1]]);
    let outcomes: Vec<Outcome> = vec![
        noncentral_sigma_walk_within(&swap, 1, Parity::Even, bound).map(|w| {
            let want = IntMatrix::from_i64(&[[-1, 2], [-2, 3]]);
            require(
                w.len() == 1 && w[0].m == 1 && w[0].term == want,
                || json!({"S0": matrix(&swap), "walk": w.iter().map(walk_step).collect::<Vec<_>>()}),
            )
        }),
        noncentral_sigma_walk_within(&unipotent, 5, Parity::Even, bound).map(|w| {
            require(
                w.len() == 5 && w.iter().all(|s| !central(&s.term)),
                || json!({"S0": matrix(&unipotent), "walk": w.iter().map(walk_step).collect::<Vec<_>>()}),
            )
        }),
        noncentral_sigma_walk_within(&unipotent, 0, Parity::Odd, bound)
            .map(|w| require(w.is_empty(), || json!({"S0": matrix(&unipotent), "steps": 0}))),
    ];
    Spec {
        name: "examples",
        statement:
            "swap walks in one step to (-1 2; -2 3); (1 1; 0 1) walks five non-central steps; zero steps give nothing",
        params: json!({}),
        seed: None,
    }
    .fold(outcomes)
}
