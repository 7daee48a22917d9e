//! Trial fan-out and the folding of trial outcomes into check records.

use nilaut::sample::trial_seed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{Check, Status};

/// `Ok(None)` passes; `Ok(Some(inputs))` fails on the recorded inputs.
pub(crate) type Outcome = std::result::Result<Option<Value>, nilaut::Error>;

/// Seed of the check labelled `label`: the master seed mixed with the
/// 64-bit FNV-1a hash of the label. Trial `t` of the check draws from
/// `trial_rng(check_seed, t)`.
pub fn check_seed(master: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    trial_seed(master, h)
}

/// `f(0), .., f(count - 1)` evaluated in parallel, in index order.
pub(crate) fn par_map<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..count).into_par_iter().map(f).collect()
}

pub(crate) fn require(cond: bool, inputs: impl FnOnce() -> Value) -> Option<Value> {
    if cond {
        None
    } else {
        Some(inputs())
    }
}

/// Splits per-trial outcome vectors of length `k` into `k` columns.
pub(crate) fn columns(rows: Vec<Vec<Outcome>>, k: usize) -> Vec<Vec<Outcome>> {
    let mut out: Vec<Vec<Outcome>> = (0..k).map(|_| Vec::with_capacity(rows.len())).collect();
    for row in rows {
        debug_assert_eq!(row.len(), k);
        for (col, o) in out.iter_mut().zip(row) {
            col.push(o);
        }
    }
    out
}

pub(crate) struct Spec<'a> {
    pub name: &'a str,
    pub statement: &'a str,
    pub params: Value,
    /// the check seed, when trials are random
    pub seed: Option<u64>,
}

impl Spec<'_> {
    /// The first failing or erroring trial becomes the witness, with its
    /// index and the check seed so it can be regenerated.
    pub(crate) fn fold(self, outcomes: Vec<Outcome>) -> Check {
        let trials = outcomes.len();
        let mut failures = 0;
        let mut witness = None;
        let mut status = Status::Pass;
        for (t, o) in outcomes.into_iter().enumerate() {
            let (st, record) = match o {
                Ok(None) => continue,
                Ok(Some(inputs)) => (Status::Fail, json!({ "inputs": inputs })),
                Err(e) => (Status::Error, json!({ "error": e.to_string() })),
            };
            failures += 1;
            if st > status {
                status = st;
            }
            if witness.is_none() {
                let mut record = record;
                record["trial"] = json!(t);
                record["seed"] = json!(self.seed);
                witness = Some(record);
            }
        }
        Check {
            name: self.name.to_string(),
            statement: self.statement.to_string(),
            params: self.params,
            status,
            trials,
            failures,
            witness,
            certificate: None,
            detail: json!({}),
        }
    }
}
