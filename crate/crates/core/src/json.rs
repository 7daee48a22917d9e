//! JSON forms of the core objects. Integers are JSON numbers of arbitrary
//! size; maps are emitted with sorted keys.

use std::sync::Arc;

use serde_json::{json, Map, Number, Value};

use crate::aut::Endomorphism;
use crate::error::{input, Result};
use crate::glz::gl2::WalkStep;
use crate::glz::{Matrix, Sublattice};
use crate::interp::StructureM;
use crate::nilgroup::{parse_element, GroupContext, GroupElement};
use crate::scalar::{Ring, Scalar};
use crate::sigma::{SigmaTrace, Witness};

pub fn int<R: Ring>(x: &R) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers print as JSON numbers"))
}

pub fn int_from<T: Scalar>(v: &Value) -> Result<T> {
    match v {
        Value::Number(n) => match n.to_string().parse::<T>() {
            Ok(x) => Ok(x),
            Err(_) => input(format!("{n} is not an integer")),
        },
        other => input(format!("expected an integer, found {other}")),
    }
}

pub fn vector<R: Ring>(v: &[R]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn vector_from<T: Scalar>(v: &Value) -> Result<Vec<T>> {
    match v {
        Value::Array(xs) => xs.iter().map(int_from).collect(),
        other => input(format!("expected an integer array, found {other}")),
    }
}

pub fn matrix<R: Ring>(m: &Matrix<R>) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn matrix_from<T: Scalar>(v: &Value) -> Result<Matrix<T>> {
    match v {
        Value::Array(rows) => Matrix::from_rows(rows.iter().map(vector_from).collect::<Result<_>>()?),
        other => input(format!("expected a row array, found {other}")),
    }
}

pub fn sublattice<T: Scalar>(l: &Sublattice<T>) -> Value {
    json!({ "ambient": l.ambient(), "basis": matrix(l.basis()) })
}

pub fn sublattice_from<T: Scalar>(v: &Value) -> Result<Sublattice<T>> {
    let ambient = match v.get("ambient").and_then(Value::as_u64) {
        Some(n) => n as usize,
        None => return input("sublattice needs an \"ambient\" dimension"),
    };
    let rows = match v.get("basis") {
        Some(Value::Array(rows)) => rows.iter().map(vector_from).collect::<Result<Vec<Vec<T>>>>()?,
        _ => return input("sublattice needs a \"basis\" row array"),
    };
    Sublattice::new(ambient, rows)
}

pub fn element<T: Scalar>(x: &GroupElement<T>) -> Value {
    Value::String(x.to_string())
}

pub fn exponents<T: Scalar>(x: &GroupElement<T>) -> Value {
    vector(x.exponents())
}

pub fn endomorphism<T: Scalar>(f: &Endomorphism<T>) -> Value {
    let mut map = Map::new();
    for (i, x) in f.images().iter().enumerate() {
        map.insert(format!("x{}", i + 1), element(x));
    }
    Value::Object(map)
}

pub fn endomorphism_from<T: Scalar>(ctx: &Arc<GroupContext<T>>, v: &Value) -> Result<Endomorphism<T>> {
    let Value::Object(map) = v else {
        return input(format!("expected a generator map, found {v}"));
    };
    if map.len() != ctx.rank() {
        return input(format!("expected {} generator images, found {}", ctx.rank(), map.len()));
    }
    let images = (1..=ctx.rank())
        .map(|i| match map.get(&format!("x{i}")) {
            Some(Value::String(text)) => parse_element(ctx, text),
            Some(other) => input(format!("image of x{i} must be element text, found {other}")),
            None => input(format!("missing image of x{i}")),
        })
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(ctx, images)
}

pub fn trace<T: Scalar>(t: &SigmaTrace<T>) -> Value {
    json!({
        "terms": t.terms.iter().map(endomorphism).collect::<Vec<_>>(),
        "depths": t.depths,
    })
}

pub fn walk_step<R: Ring>(w: &WalkStep<R>) -> Value {
    json!({
        "mode": format!("{:?}", w.mode),
        "parity": format!("{:?}", w.parity),
        "orientation": format!("{:?}", w.orientation),
        "m": w.m,
        "involution": matrix(&w.involution),
        "term": matrix(&w.term),
    })
}

pub fn witness<T: Scalar>(w: &Witness<T>) -> Value {
    json!({
        "sigma": endomorphism(&w.sigma),
        "conjugators": w.conjugators.iter().map(endomorphism).collect::<Vec<_>>(),
        "thetas": w.thetas.iter().map(endomorphism).collect::<Vec<_>>(),
        "trace": trace(&w.trace),
        "abelianizations": w.trace.abelianizations().iter().map(matrix).collect::<Vec<_>>(),
        "walk": w.walk.iter().map(walk_step).collect::<Vec<_>>(),
        "adapted_basis": matrix(&w.adapted_basis),
        "certified": w.is_certified(),
    })
}

pub fn structure<T: Scalar>(m: &StructureM<T>) -> Value {
    let pairs = |v: &[(usize, usize)]| v.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>();
    json!({
        "rank": m.rank,
        "seed": m.seed,
        "samples": m.samples,
        "sorts": {
            "A": m.vectors.iter().map(|v| vector(v)).collect::<Vec<_>>(),
            "AutA": m.automorphisms.iter().map(matrix).collect::<Vec<_>>(),
            "D": m.summands.iter().map(sublattice).collect::<Vec<_>>(),
        },
        "rejected": m.rejected.iter().map(sublattice).collect::<Vec<_>>(),
        "relations": {
            "fix": pairs(&m.involution_fixed),
            "member": pairs(&m.membership),
            "included": pairs(&m.inclusion),
            "R": pairs(&m.complement),
            "act": m.action.iter().map(|&(a, v, w)| json!([a, v, w])).collect::<Vec<_>>(),
        },
    })
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
