//! one-step-down, interp-M, ring-Z and endo-graph: the T+/T- split of
//! `K_{s-1}`, the summand structure, and the integer and graph encodings.

use std::collections::BTreeMap;
use std::sync::Arc;

use nilaut::glz::gl2::order3_falsifier;
use nilaut::glz::{
    classify_involution2, element_order, is_diagonalizable_involution, relation_r, InvolutionClass, Order, Sublattice,
};
use nilaut::interp::{
    abelian_to_inn, build_structure_m, factor_basis, factor_inner_as_symmetries, inn_to_abelian, symmetry_sample,
    t_plus_minus_classify, EncodedInteger, GraphFrame, SampledSymmetry, Stratum, TClass,
};
use nilaut::json::{element, endomorphism, matrix, structure, sublattice, vector};
use nilaut::nilgroup::{parse_element, GroupContext};
use nilaut::sample::{random_automorphism, random_element, random_k_element, random_unimodular, trial_rng};
use nilaut::{BigInt, Context, Endo, IntMatrix, IntSublattice};
use rand::Rng;
use serde_json::{json, Value};

use super::point_params;
use crate::config::{Plan, Point};
use crate::report::Check;
use crate::runner::{check_seed, columns, par_map, require, Outcome, Spec};
use crate::Result;

fn expected_class(f: &Endo) -> TClass {
    let s = f.context().class();
    if f.is_identity() {
        TClass::Both
    } else if (s - 1).is_multiple_of(2) {
        TClass::TPlus
    } else {
        TClass::TMinus
    }
}

pub(crate) fn run_one_step_down(plan: &Plan) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &p in &plan.grid {
        out.extend(one_step_down_at(plan, p)?);
    }
    let factor_grid: Vec<Point> = if plan.pinned {
        plan.grid.clone()
    } else {
        [2, 3, 4]
            .into_iter()
            .flat_map(|n| [2, 3].into_iter().map(move |s| Point { n, s }))
            .collect()
    };
    for p in factor_grid {
        out.push(factorization(p)?);
    }
    if !plan.pinned {
        out.push(classification_examples()?);
    }
    Ok(out)
}

fn one_step_down_at(plan: &Plan, p: Point) -> Result<Vec<Check>> {
    let ctx = GroupContext::<BigInt>::new(p.n, p.s)?;
    let label = format!("one-step-down n={} s={}", p.n, p.s);
    let sample_seed = check_seed(plan.seed, &format!("{label} symmetries"));
    let conjugates = plan.samples();
    let sample = symmetry_sample(&ctx, conjugates, conjugates / 2, &mut trial_rng(sample_seed, 0));
    let exact: Vec<SampledSymmetry<BigInt>> = sample
        .iter()
        .filter(|s| s.stratum != Stratum::IaPerturbed)
        .cloned()
        .collect();
    let strata = json!({
        "canonical": 1,
        "conjugate": conjugates,
        "ia-perturbed": conjugates / 2,
        "symmetry_seed": sample_seed,
    });
    let mut out = Vec::new();

    let seed = check_seed(plan.seed, &format!("{label} forward"));
    let rows = par_map(plan.trials, |t| -> (Vec<Outcome>, bool) {
        let mut rng = trial_rng(seed, t as u64);
        let f = random_k_element(&ctx, p.s - 1, 3, &mut rng);
        let want = expected_class(&f);
        let forward = (|| {
            let full = t_plus_minus_classify(&f, &sample)?;
            let ex = t_plus_minus_classify(&f, &exact)?;
            Ok(require(
                full == want && ex == want,
                || json!({"f": endomorphism(&f), "full": full.name(), "exact": ex.name(), "expected": want.name()}),
            ))
        })();
        let (a, b) = (rng.gen_range(0..sample.len()), rng.gen_range(0..sample.len()));
        let products = (|| {
            let (sa, sb) = (&sample[a], &sample[b]);
            let prod = sa.theta.compose(&sb.theta)?;
            let prod_inv = sb.theta_inv.compose(&sa.theta_inv)?;
            let conj = f.conjugate_with(&prod, &prod_inv)?;
            Ok(require(
                conj == f,
                || json!({"f": endomorphism(&f), "theta_1": endomorphism(&sa.theta), "theta_2": endomorphism(&sb.theta)}),
            ))
        })();
        (vec![forward, products], want.is_minus())
    });
    let minus = rows.iter().filter(|r| r.1).count();
    let cols = columns(rows.into_iter().map(|r| r.0).collect(), 2);
    let mut cols = cols.into_iter();
    let mut c = Spec {
        name: "forward",
        statement:
            "f in K_{s-1} is in T+ for even s-1 and in T- for odd s-1, against the full and the exact-symmetry samples",
        params: point_params(p),
        seed: Some(seed),
    }
    .fold(cols.next().expect("two columns"));
    c.detail = json!({ "strata": strata });
    out.push(c);
    let mut c = Spec {
        name: "products",
        statement: "elements of T- (and T+) commute with products of two sampled symmetries",
        params: point_params(p),
        seed: Some(seed),
    }
    .fold(cols.next().expect("two columns"));
    c.detail = json!({ "t_minus_elements": minus });
    out.push(c);

    let seed = check_seed(plan.seed, &format!("{label} reverse"));
    let sources = ["automorphism", "ia", "inner", "k-lower", "k-top"];
    let rows = par_map(plan.trials, |t| -> (Outcome, String, bool) {
        let mut rng = trial_rng(seed, t as u64);
        let source = sources[t % sources.len()];
        let f = match source {
            "automorphism" => random_automorphism(&ctx, &mut rng).0,
            "ia" => random_k_element(&ctx, 1, 3, &mut rng),
            "inner" => Endo::inner(&random_element(&ctx, 1, 3, &mut rng)),
            "k-lower" => {
                let m = rng.gen_range(1..p.s);
                random_k_element(&ctx, m, 3, &mut rng)
            }
            _ => random_k_element(&ctx, p.s - 1, 3, &mut rng),
        };
        let r = (|| {
            let full = t_plus_minus_classify(&f, &sample)?;
            let ex = t_plus_minus_classify(&f, &exact)?;
            let split = full.is_plus() || full.is_minus();
            let ok = !split || f.in_k(p.s - 1)?;
            Ok((ok, full, ex))
        })();
        match r {
            Err(e) => (Err(e), format!("{source}:error"), false),
            Ok((ok, full, ex)) => (
                Ok(require(
                    ok,
                    || json!({"f": endomorphism(&f), "source": source, "full": full.name()}),
                )),
                format!("{source}:{}/{}", full.name(), ex.name()),
                full.name() != ex.name(),
            ),
        }
    });
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut disagreements = 0;
    let mut outcomes = Vec::new();
    for (o, key, differ) in rows {
        outcomes.push(o);
        *counts.entry(key).or_default() += 1;
        disagreements += usize::from(differ);
    }
    let mut c = Spec {
        name: "reverse",
        statement: "f classified T+ or T- against the full sample lies in K_{s-1}",
        params: point_params(p),
        seed: Some(seed),
    }
    .fold(outcomes);
    c.detail = json!({
        "verdicts": "source:full/exact",
        "counts": counts,
        "strata_disagreements": disagreements,
        "strata": strata,
    });
    out.push(c);

    if p.s == 2 {
        out.push(inner_abelian(plan, &ctx, p));
    }
    Ok(out)
}

fn factorization(p: Point) -> Result<Check> {
    let ctx = GroupContext::<BigInt>::new(p.n, p.s)?;
    let outcomes: Vec<Outcome> = (0..p.n)
        .map(|i| {
            let (t1, t2) = factor_inner_as_symmetries(&ctx, i)?;
            let x = nilaut::Element::generator(&ctx, i)?;
            let basis = factor_basis(&ctx, i)?;
            let mut ok = t1.compose(&t2)? == Endo::inner(&x) && t1.is_involution() && t2.is_involution();
            for b in &basis {
                ok &= t2.apply(b)? == b.invert();
            }
            let cols: Vec<Vec<BigInt>> = basis.iter().map(|b| b.abelianized()).collect();
            ok &= IntMatrix::from_columns(&cols)?.is_unimodular();
            Ok(require(ok, || {
                json!({
                    "generator": i,
                    "theta_1": endomorphism(&t1),
                    "theta_2": endomorphism(&t2),
                    "basis": basis.iter().map(element).collect::<Vec<_>>(),
                })
            }))
        })
        .collect();
    Ok(Spec {
        name: "factorization",
        statement:
            "conjugation by a generator x is theta_1 theta_2 with theta_2 inverting the basis {x} and {yx : y != x}",
        params: point_params(p),
        seed: None,
    }
    .fold(outcomes))
}

fn inner_abelian(plan: &Plan, ctx: &Arc<Context>, p: Point) -> Check {
    let seed = check_seed(plan.seed, &format!("one-step-down n={} s={} inner", p.n, p.s));
    let outcomes = par_map(plan.trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let x = random_element(ctx, 1, 4, &mut rng);
        let y = random_element(ctx, 1, 4, &mut rng);
        let (ix, iy) = (Endo::inner(&x), Endo::inner(&y));
        let vx = inn_to_abelian(&ix, &x)?;
        let vy = inn_to_abelian(&iy, &y)?;
        let vxy = inn_to_abelian(&ix.compose(&iy)?, &x.multiply(&y)?)?;
        let sum: Vec<BigInt> = vx.iter().zip(&vy).map(|(a, b)| a + b).collect();
        let ok = vx == x.abelianized() && abelian_to_inn(ctx, &vx)? == ix && vxy == sum;
        Ok(require(
            ok,
            || json!({"x": element(&x), "y": element(&y), "v_x": vector(&vx)}),
        ))
    });
    Spec {
        name: "inner-abelian",
        statement: "inner(x) maps to the abelianization of x, back to inner(x), and products to sums",
        params: point_params(p),
        seed: Some(seed),
    }
    .fold(outcomes)
}

fn classification_examples() -> Result<Check> {
    let c2 = GroupContext::<BigInt>::new(2, 2)?;
    let c3 = GroupContext::<BigInt>::new(2, 3)?;
    let endo = |ctx: &Arc<Context>, a: &str, b: &str| -> nilaut::Result<Endo> {
        Endo::new(ctx, vec![parse_element(ctx, a)?, parse_element(ctx, b)?])
    };
    let cases: Vec<(&Arc<Context>, nilaut::Result<Endo>, &str)> = vec![
        (&c2, endo(&c2, "x1 [x2,x1]", "x2"), "T-"),
        (&c3, endo(&c3, "x1 [[x2,x1],x1]", "x2"), "T+"),
        (&c2, endo(&c2, "x2", "x1"), "neither"),
    ];
    let outcomes = cases
        .into_iter()
        .map(|(ctx, f, want)| {
            let f = f?;
            let sample = symmetry_sample(ctx, 20, 10, &mut trial_rng(0, 0));
            let got = t_plus_minus_classify(&f, &sample)?;
            Ok(require(
                got.name() == want,
                || json!({"f": endomorphism(&f), "got": got.name(), "want": want}),
            ))
        })
        .collect();
    Ok(Spec {
        name: "classification-examples",
        statement:
            "x1 -> x1[x2,x1] is T- at class 2, x1 -> x1[[x2,x1],x1] is T+ at class 3, the generator swap is neither",
        params: json!({}),
        seed: Some(0),
    }
    .fold(outcomes))
}

const STRUCTURE_SAMPLES: usize = 6;

pub(crate) fn run_interp_m(plan: &Plan) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &n in &plan.ranks {
        let seed = check_seed(plan.seed, &format!("interp-M structure n={n}"));
        let outcome: Outcome;
        let mut cert = None;
        let mut detail = json!({});
        let mut examples = None;
        match build_structure_m::<BigInt>(n, STRUCTURE_SAMPLES, seed) {
            Err(e) => outcome = Err(e),
            Ok(m) => {
                detail = json!({
                    "A": m.vectors.len(),
                    "AutA": m.automorphisms.len(),
                    "D": m.summands.len(),
                    "rejected": m.rejected.len(),
                    "membership": m.membership.len(),
                    "inclusion": m.inclusion.len(),
                    "R": m.complement.len(),
                    "action": m.action.len(),
                });
                outcome = m.verify().map(|ok| require(ok, || structure(&m)));
                if n == 2 {
                    cert = Some(structure(&m));
                    examples = Some(structure_examples(&m));
                }
            }
        }
        let mut c = Spec {
            name: "structure",
            statement: "every listed relation tuple and sort admission of the sampled structure recomputes",
            params: json!({"n": n, "samples": STRUCTURE_SAMPLES}),
            seed: Some(seed),
        }
        .fold(vec![outcome]);
        c.detail = detail;
        c.certificate = cert;
        out.push(c);
        out.extend(examples);
    }
    if plan.ranks.contains(&2) {
        out.push(summand_brute_force());
        out.push(falsifier_consistency(plan));
    }
    Ok(out)
}

fn unit_lattice(v: [i64; 2]) -> IntSublattice {
    Sublattice::from_i64(2, &[v]).expect("ambient 2")
}

fn structure_examples(m: &nilaut::interp::StructureM<BigInt>) -> Check {
    let e1 = unit_lattice([1, 0]);
    let e2 = unit_lattice([0, 1]);
    let twice = unit_lattice([2, 0]);
    let diag = IntMatrix::from_i64(&[[1, 0], [0, -1]]);
    let di = m.automorphisms.iter().position(|a| *a == diag);
    let (i1, i2) = (m.summand_index(&e1), m.summand_index(&e2));
    let fix_ok = matches!((di, i1), (Some(a), Some(d)) if m.involution_fixed.contains(&(a, d)));
    let r_ok = matches!((i1, i2), (Some(a), Some(b)) if m.complement.contains(&(a, b)));
    let twice_ok =
        m.summand_index(&twice).is_none() && m.rejected.contains(&twice) && e1.includes(&twice).unwrap_or(false);
    let outcomes = vec![
        Ok(require(fix_ok, || json!({"missing": "Fix(diag(1,-1)) = <e1>"}))),
        Ok(require(r_ok, || json!({"missing": "R(<e1>, <e2>)"}))),
        Ok(require(
            twice_ok,
            || json!({"missing": "<2e1> rejected but included in <e1>"}),
        )),
    ];
    Spec {
        name: "structure-examples",
        statement: "diag(1,-1) contributes Fix = <e1>; R(<e1>, <e2>) holds; <2e1> lies in <e1> but is not a summand",
        params: json!({"n": 2}),
        seed: None,
    }
    .fold(outcomes)
}

fn det2(u: [i64; 2], v: [i64; 2]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `<u, v>` is a summand iff some `C` has `<u, v> + C = Z^2` directly:
/// rank 0 takes `C = Z^2`, rank 2 needs `|det| = 1`, and rank 1 needs a
/// vector `w` with `gcd(det(u, w), det(v, w)) = 1`.
fn brute_summand(u: [i64; 2], v: [i64; 2]) -> bool {
    if u == [0, 0] && v == [0, 0] {
        return true;
    }
    let d = det2(u, v);
    if d != 0 {
        return d.abs() == 1;
    }
    (-10..=10).any(|a| (-10..=10).any(|b| gcd(det2(u, [a, b]), det2(v, [a, b])) == 1))
}

fn summand_brute_force() -> Check {
    let vecs: Vec<[i64; 2]> = (-3..=3).flat_map(|a| (-3..=3).map(move |b| [a, b])).collect();
    let pairs: Vec<([i64; 2], [i64; 2])> = vecs.iter().flat_map(|&u| vecs.iter().map(move |&v| (u, v))).collect();
    let outcomes = par_map(pairs.len(), |t| {
        let (u, v) = pairs[t];
        let l = Sublattice::<BigInt>::from_i64(2, &[u, v])?;
        let brute = brute_summand(u, v);
        let engine = l.is_direct_summand();
        let complement_ok = match l.find_complement() {
            Some(c) => engine && relation_r(&l, &c)?,
            None => !engine,
        };
        Ok(require(
            engine == brute && complement_ok,
            || json!({"generators": [u, v], "lattice": sublattice(&l), "engine": engine, "brute_force": brute}),
        ))
    });
    Spec {
        name: "summand-brute-force",
        statement: "the summand test and complement finder agree with a brute-force complement search on every <u, v>, u, v in [-3,3]^2",
        params: json!({"n": 2, "entries": [-3, 3], "search": [-10, 10]}),
        seed: None,
    }
    .fold(outcomes)
}

fn order3(a: &IntMatrix, b: &IntMatrix) -> bool {
    let p = a * b;
    !p.is_identity() && p.pow(3).is_identity()
}

fn falsifier_consistency(plan: &Plan) -> Check {
    let seed = check_seed(plan.seed, "interp-M falsifier");
    let samples = plan.samples();
    let conj = plan.trials;
    let per = 1 + conj;
    let classes = [InvolutionClass::Diagonal, InvolutionClass::Swap];
    let outcomes = par_map(classes.len() * per, |t| {
        let class = classes[t / per];
        let mut rng = trial_rng(seed, t as u64);
        let rep: IntMatrix = class.representative();
        let f = if t % per == 0 {
            rep
        } else {
            let q: IntMatrix = random_unimodular(2, &mut rng);
            &(&q * &rep) * &q.inverse_unimodular()?
        };
        let diagonalizable = is_diagonalizable_involution(&f)?;
        let found = order3_falsifier(&f, samples, &mut rng)?;
        let ok = match (class, &found) {
            (InvolutionClass::Diagonal, None) => diagonalizable,
            (InvolutionClass::Swap, Some((a, b))) => {
                !diagonalizable
                    && order3(a, b)
                    && classify_involution2(a)?.0 == InvolutionClass::Swap
                    && classify_involution2(b)?.0 == InvolutionClass::Swap
                    && element_order(&(a * b))? == Order::Finite(3)
            }
            _ => false,
        };
        Ok(require(ok, || {
            json!({
                "involution": matrix(&f),
                "class": class.name(),
                "diagonalizable": diagonalizable,
                "falsifier": found.as_ref().map(|(a, b)| json!([matrix(a), matrix(b)])),
            })
        }))
    });
    Spec {
        name: "diagonalizability-falsifier",
        statement:
            "diagonalizable involutions yield no order-3 product of conjugates; swap-class involutions yield one",
        params: json!({"n": 2, "samples": samples, "conjugates_per_class": conj}),
        seed: Some(seed),
    }
    .fold(outcomes)
}

pub(crate) fn run_ring(plan: &Plan) -> Result<Vec<Check>> {
    let (a, b) = plan.m_range();
    let values: Vec<i64> = (a..=b).collect();
    let enc = |m: i64| EncodedInteger::<BigInt>::encode(BigInt::from(m));
    let mut out = Vec::new();
    let roundtrip: Vec<Outcome> = values
        .iter()
        .map(|&m| {
            let e = enc(m);
            let back = EncodedInteger::from_carrier(e.carrier().clone())?;
            Ok(require(
                e.decode() == BigInt::from(m) && back == e,
                || json!({"m": m, "carrier": matrix(e.carrier())}),
            ))
        })
        .collect();
    out.push(
        Spec {
            name: "roundtrip",
            statement: "decode(encode(m)) = m and U(m) is recognized as a carrier",
            params: json!({"m_min": a, "m_max": b}),
            seed: None,
        }
        .fold(roundtrip),
    );
    let pairs: Vec<(i64, i64)> = values
        .iter()
        .flat_map(|&x| values.iter().map(move |&y| (x, y)))
        .collect();
    let rows = par_map(pairs.len(), |t| {
        let (x, y) = pairs[t];
        let (ex, ey) = (enc(x), enc(y));
        let add: Outcome = ex.add(&ey).map(|s| {
            require(
                s.decode() == BigInt::from(x + y),
                || json!({"a": x, "b": y, "sum": matrix(s.carrier())}),
            )
        });
        let p = ex.mul(&ey);
        let mul: Outcome = Ok(require(
            p.decode() == BigInt::from(x * y),
            || json!({"a": x, "b": y, "product": matrix(p.carrier())}),
        ));
        vec![add, mul]
    });
    let specs = [
        ("addition", "U(a) U(b) decodes to a + b"),
        ("multiplication", "the e2-component of U(a)(b e1) - b e1 decodes to ab"),
    ];
    for ((name, statement), outcomes) in specs.iter().zip(columns(rows, 2)) {
        out.push(
            Spec {
                name,
                statement,
                params: json!({"m_min": a, "m_max": b}),
                seed: None,
            }
            .fold(outcomes),
        );
    }
    let seed = check_seed(plan.seed, "ring-Z laws");
    let laws = par_map(plan.trials, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let [x, y, z] = [0; 3].map(|_| rng.gen_range(a..=b));
        let (ex, ey, ez) = (enc(x), enc(y), enc(z));
        let left = ex.mul(&ey.add(&ez)?);
        let right = ex.mul(&ey).add(&ex.mul(&ez))?;
        let assoc_mul = ex.mul(&ey).mul(&ez) == ex.mul(&ey.mul(&ez));
        let assoc_add = ex.add(&ey)?.add(&ez)? == ex.add(&ey.add(&ez)?)?;
        let comm = ex.mul(&ey) == ey.mul(&ex) && ex.add(&ey)? == ey.add(&ex)?;
        let unit = ex.mul(&enc(1)) == ex && ex.add(&enc(0))? == ex && ex.mul(&enc(0)) == enc(0);
        Ok(require(
            left == right && assoc_mul && assoc_add && comm && unit,
            || json!({"a": x, "b": y, "c": z}),
        ))
    });
    out.push(
        Spec {
            name: "ring-laws",
            statement: "distributivity, associativity, commutativity and units hold on encoded triples",
            params: json!({"m_min": a, "m_max": b}),
            seed: Some(seed),
        }
        .fold(laws),
    );
    let bad = [[[1, 1], [0, 1]], [[2, 0], [3, 1]], [[1, 0], [3, -1]], [[0, 1], [1, 0]]];
    let rejects: Vec<Outcome> = bad
        .iter()
        .map(|m| {
            let c = IntMatrix::from_i64(m);
            Ok(require(
                EncodedInteger::from_carrier(c.clone()).is_err(),
                || json!({"carrier": matrix(&c)}),
            ))
        })
        .collect();
    out.push(
        Spec {
            name: "carrier-rejection",
            statement: "matrices not of the form (1 0; m 1) are refused as carriers",
            params: json!({}),
            seed: None,
        }
        .fold(rejects),
    );
    Ok(out)
}

fn random_frame<G: Rng>(r: usize, rng: &mut G) -> nilaut::Result<GraphFrame<BigInt>> {
    let w: IntMatrix = random_unimodular(2 * r, rng);
    let rows = w.to_rows();
    let b = Sublattice::new(2 * r, rows[..r].to_vec())?;
    let c = Sublattice::new(2 * r, rows[r..].to_vec())?;
    GraphFrame::new(b, c, random_unimodular(r, rng))
}

fn random_map<G: Rng>(r: usize, rng: &mut G) -> IntMatrix {
    IntMatrix::from_rows(
        (0..r)
            .map(|_| (0..r).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect())
            .collect(),
    )
    .expect("square")
}

fn frame_json(f: &GraphFrame<BigInt>) -> Value {
    json!({"B": sublattice(&f.b), "C": sublattice(&f.c), "iota": matrix(&f.iota)})
}

pub(crate) fn run_endo_graph(plan: &Plan) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &n in &plan.ranks {
        let r = n / 2;
        let seed = check_seed(plan.seed, &format!("endo-graph n={n}"));
        let rows = par_map(plan.trials, |t| -> Vec<Outcome> {
            let mut rng = trial_rng(seed, t as u64);
            let frame = if t % 2 == 0 {
                Ok(GraphFrame::standard(r))
            } else {
                random_frame(r, &mut rng)
            };
            let frame = match frame {
                Ok(f) => f,
                Err(e) => return vec![Err(e.clone()), Err(e.clone()), Err(e)],
            };
            let alpha = random_map(r, &mut rng);
            let beta = random_map(r, &mut rng);
            let inputs = || json!({"frame": frame_json(&frame), "alpha": matrix(&alpha), "beta": matrix(&beta)});
            let g1 = match frame.encode(&alpha) {
                Ok(g) => g,
                Err(e) => return vec![Err(e.clone()), Err(e.clone()), Err(e)],
            };
            let roundtrip = frame.decode(&g1).map(|d| require(d == alpha, inputs));
            let complement = relation_r(&g1, &frame.c).map(|ok| require(ok && g1.rank() == r, inputs));
            let compose = (|| {
                let g2 = frame.encode(&beta)?;
                let d = frame.decode(&frame.compose_graphs(&g1, &g2)?)?;
                Ok(require(d == &alpha * &beta, inputs))
            })();
            vec![roundtrip, complement, compose]
        });
        let specs = [
            ("roundtrip", "decode(encode(alpha)) = alpha"),
            ("complement", "the graph of alpha is a complement of C"),
            (
                "composition",
                "the graph composed from two graphs decodes to the matrix product",
            ),
        ];
        for ((name, statement), outcomes) in specs.iter().zip(columns(rows, 3)) {
            out.push(
                Spec {
                    name,
                    statement,
                    params: json!({"n": n, "r": r}),
                    seed: Some(seed),
                }
                .fold(outcomes),
            );
        }
        if n == 4 {
            out.push(graph_example());
        }
    }
    Ok(out)
}

fn graph_example() -> Check {
    let frame = GraphFrame::<BigInt>::standard(2);
    let outcome: Outcome = (|| {
        let g = frame.encode(&IntMatrix::from_i64(&[[1, 2], [3, 4]]))?;
        let want = Sublattice::from_i64(4, &[[1, 0, 1, 3], [0, 1, 2, 4]])?;
        let zero = frame.encode(&IntMatrix::zeros(2, 2))?;
        let ok = g == want && relation_r(&g, &frame.c)? && zero == frame.b;
        Ok(require(
            ok,
            || json!({"graph": sublattice(&g), "zero_graph": sublattice(&zero)}),
        ))
    })();
    Spec {
        name: "example",
        statement:
            "with B = <e1,e2>, C = <e3,e4>, alpha = (1 2; 3 4) the graph is <e1+e3+3e4, e2+2e3+4e4>; alpha = 0 gives B",
        params: json!({"n": 4}),
        seed: None,
    }
    .fold(vec![outcome])
}
