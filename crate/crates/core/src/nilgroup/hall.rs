//! Hall basis of basic commutators.

use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Free generator, 0-based.
    Generator(usize),
    /// `[left, right]`, both given as earlier basis indices.
    Bracket(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HallElement {
    pub index: usize,
    pub weight: usize,
    pub shape: Shape,
}

/// All basic commutators of weight at most `class` on `rank` generators.
///
/// Ordered by weight, then lexicographically by `(left, right)` basis index.
/// A pair `[l, r]` is basic when `l > r` and, if `l = [a, b]`, also `b <= r`.
pub fn hall_basis(rank: usize, class: usize) -> Vec<HallElement> {
    let mut basis: Vec<HallElement> = (0..rank)
        .map(|i| HallElement {
            index: i,
            weight: 1,
            shape: Shape::Generator(i),
        })
        .collect();
    for w in 2..=class {
        let existing = basis.len();
        let mut fresh = Vec::new();
        for l in 0..existing {
            let wl = basis[l].weight;
            if wl >= w {
                continue;
            }
            for r in 0..l {
                if basis[r].weight + wl != w {
                    continue;
                }
                if let Shape::Bracket(_, b) = basis[l].shape {
                    if b > r {
                        continue;
                    }
                }
                fresh.push((l, r));
            }
        }
        fresh.sort_unstable();
        for (l, r) in fresh {
            let index = basis.len();
            basis.push(HallElement {
                index,
                weight: w,
                shape: Shape::Bracket(l, r),
            });
        }
    }
    basis
}

/// Text form of a basis element, e.g. `[[x2,x1],x1]`.
pub fn basis_label(basis: &[HallElement], index: usize) -> String {
    let mut out = String::new();
    write_label(basis, index, &mut out);
    out
}

fn write_label(basis: &[HallElement], index: usize, out: &mut String) {
    match basis[index].shape {
        Shape::Generator(i) => {
            let _ = write!(out, "x{}", i + 1);
        }
        Shape::Bracket(l, r) => {
            out.push('[');
            write_label(basis, l, out);
            out.push(',');
            write_label(basis, r, out);
            out.push(']');
        }
    }
}
