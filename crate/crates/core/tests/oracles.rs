//! The engine against independent computations: closed-form class-2
//! multiplication, plain 2x2 integer arithmetic, and brute-force search.

use std::collections::HashMap;

use nilaut::glz::{classify_involution2, InvolutionClass, Sublattice};
use nilaut::nilgroup::{collect, FreeWord, GroupContext};
use nilaut::sigma::{find_nontrivial_witness, Budget, WitnessSearch};
use nilaut::{BigInt, Context, Element, Endo, IntMatrix};
use proptest::prelude::*;

type M2 = [[i64; 2]; 2];

fn mul2(a: M2, b: M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn inv2(a: M2) -> M2 {
    let d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    assert!(d == 1 || d == -1);
    [[a[1][1] * d, -a[0][1] * d], [-a[1][0] * d, a[0][0] * d]]
}

fn to_i64(m: &IntMatrix) -> M2 {
    let e = |i, j| i64::try_from(&m[(i, j)]).unwrap();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Index of the basis element `[xi,xj]` (1-based labels) by its printed
/// name, so the oracle does not depend on the engine's ordering rule.
fn bracket_index(ctx: &Context) -> HashMap<(usize, usize), usize> {
    let n = ctx.rank();
    let mut out = HashMap::new();
    for k in ctx.weight_range(2) {
        let label = ctx.label(k);
        for i in 1..=n {
            for j in 1..=n {
                if label == format!("[x{i},x{j}]") {
                    out.insert((i - 1, j - 1), k);
                }
            }
        }
    }
    out
}

/// `x^a [..]^c · x^b [..]^d` at class 2: moving `x_j^{b_j}` left past
/// `x_i^{a_i}` for `i > j` produces `[x_i, x_j]^{a_i b_j}`.
fn closed_form(ctx: &Context, g: &[i64], h: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = g.iter().zip(h).map(|(x, y)| x + y).collect();
    for ((i, j), k) in bracket_index(ctx) {
        assert!(i > j);
        out[k] += g[i] * h[j];
    }
    assert_eq!(out.len(), ctx.basis_len());
    out
}

fn element(ctx: &std::sync::Arc<Context>, v: &[i64]) -> Element {
    Element::from_exponents(ctx, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

fn exps(g: &Element) -> Vec<i64> {
    g.exponents().iter().map(|x| i64::try_from(x).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn class_two_closed_form_rank_two(g in prop::collection::vec(-20i64..=20, 3), h in prop::collection::vec(-20i64..=20, 3)) {
        let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
        let prod = element(&ctx, &g).multiply(&element(&ctx, &h)).unwrap();
        prop_assert_eq!(exps(&prod), vec![g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[1] * h[0]]);
    }

    #[test]
    fn class_two_closed_form_rank_three(g in prop::collection::vec(-9i64..=9, 6), h in prop::collection::vec(-9i64..=9, 6)) {
        let ctx = GroupContext::<BigInt>::new(3, 2).unwrap();
        let prod = element(&ctx, &g).multiply(&element(&ctx, &h)).unwrap();
        prop_assert_eq!(exps(&prod), closed_form(&ctx, &g, &h));
    }

    #[test]
    fn collect_matches_closed_form(letters in prop::collection::vec((0usize..3, any::<bool>()), 0..30)) {
        let ctx = GroupContext::<BigInt>::new(3, 2).unwrap();
        let signed: Vec<i32> = letters.iter().map(|&(i, neg)| if neg { -(i as i32 + 1) } else { i as i32 + 1 }).collect();
        let engine = collect(&ctx, &FreeWord::from_signed(&signed)).unwrap();
        let mut acc = vec![0i64; ctx.basis_len()];
        for &l in &signed {
            let mut x = vec![0i64; ctx.basis_len()];
            x[l.unsigned_abs() as usize - 1] = l.signum() as i64;
            acc = closed_form(&ctx, &acc, &x);
        }
        prop_assert_eq!(exps(&engine), acc);
    }
}

#[test]
fn spec_class_two_values() {
    let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
    let w = |l: &[i32]| exps(&collect(&ctx, &FreeWord::from_signed(l)).unwrap());
    assert_eq!(w(&[1, 2]), [1, 1, 0]);
    assert_eq!(w(&[2, 1]), [1, 1, 1]);
    assert_eq!(w(&[1, -1]), [0, 0, 0]);
    let g = element(&ctx, &[1, 1, 0]);
    assert_eq!(exps(&g.invert()), [-1, -1, 1]);
    assert_eq!(exps(&g.power(&BigInt::from(2))), [2, 2, 1]);
    let (x1, x2) = (element(&ctx, &[1, 0, 0]), element(&ctx, &[0, 1, 0]));
    assert_eq!(exps(&x1.commutator(&x2).unwrap()), [0, 0, -1]);
    assert_eq!(exps(&x2.commutator(&x1).unwrap()), [0, 0, 1]);
    assert_eq!(exps(&Endo::inner(&x1).apply(&x2).unwrap()), [0, 1, -1]);
}

/// The converse witness for `diag(1,-1)` against `F S F S^-1` and
/// `F S F S` computed on plain arrays.
#[test]
fn witness_trace_matches_matrix_oracle() {
    let s: M2 = [[1, 1], [0, 1]];
    let f1: M2 = [[1, 0], [0, -1]];
    let f2: M2 = [[1, 0], [2, -1]];
    let s1 = mul2(mul2(mul2(f1, s), f1), inv2(s));
    assert_eq!(s1, [[1, -2], [0, 1]]);
    let s2 = mul2(mul2(mul2(f2, s1), f2), s1);
    assert_eq!(s2, [[-3, 8], [-8, 21]]);

    let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
    let theta = Endo::lift_matrix(&ctx, &IntMatrix::from_i64(&f1)).unwrap();
    let WitnessSearch::Found(w) = find_nontrivial_witness(&theta, Budget::default()).unwrap() else {
        panic!("no witness for diag(1,-1)");
    };
    assert!(w.is_certified());
    let ab = w.trace.abelianizations();
    assert_eq!(to_i64(&ab[0]), s);
    assert_eq!(to_i64(&ab[1]), s1);
    assert_eq!(to_i64(&ab[2]), s2);
    assert_eq!(to_i64(&w.thetas[0].abelianization_matrix()), f1);
    assert_eq!(to_i64(&w.thetas[1].abelianization_matrix()), f2);
    assert!(!w.trace.terms[2].in_k(1).unwrap());
}

/// Every gcd-based fact about a rank-one sublattice of `Z^2` checked by
/// looking for a complementary vector.
#[test]
fn summands_agree_with_complement_search() {
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            if a == 0 && b == 0 {
                continue;
            }
            let l = Sublattice::<BigInt>::from_i64(2, &[[a, b]]).unwrap();
            let brute = (-10i64..=10).any(|c| (-10i64..=10).any(|d| (a * d - b * c).abs() == 1));
            assert_eq!(l.is_direct_summand(), brute, "({a},{b})");
        }
    }
    for r in [[1i64, 0, 0, 1], [2, 0, 0, 1], [1, 1, 1, -1], [3, 1, 2, 1], [0, 2, 2, 0]] {
        let l = Sublattice::<BigInt>::from_i64(2, &[[r[0], r[1]], [r[2], r[3]]]).unwrap();
        let det = (r[0] * r[3] - r[1] * r[2]).abs();
        assert_eq!(l.is_direct_summand(), det == 1);
    }
}

/// Classification of every involution `(a b; c -a)` with small entries
/// against fixed/negated vectors found by enumeration.
#[test]
fn involution_classes_by_enumeration() {
    for a in -4i64..=4 {
        for b in -6i64..=6 {
            for c in -6i64..=6 {
                if a * a + b * c != 1 {
                    continue;
                }
                let m: M2 = [[a, b], [c, -a]];
                let prim = |sign: i64| -> (i64, i64) {
                    for x in -12i64..=12 {
                        for y in -12i64..=12 {
                            if (x, y) != (0, 0)
                                && num_integer::gcd(x, y) == 1
                                && a * x + b * y == sign * x
                                && c * x - a * y == sign * y
                            {
                                return (x, y);
                            }
                        }
                    }
                    panic!("no eigenvector for {m:?}");
                };
                let (u, v) = (prim(1), prim(-1));
                let index = (u.0 * v.1 - u.1 * v.0).abs();
                let (class, p) = classify_involution2(&IntMatrix::from_i64(&m)).unwrap();
                let expected = if index == 1 {
                    InvolutionClass::Diagonal
                } else {
                    InvolutionClass::Swap
                };
                assert_eq!(class, expected, "{m:?}");
                let p = to_i64(&p);
                let rep = to_i64(&class.representative());
                assert_eq!(mul2(mul2(p, rep), inv2(p)), m);
            }
        }
    }
}
