//! Algebraic laws on seeded random inputs.

use std::sync::Arc;

use nilaut::interp::{symmetry_sample, t_plus_minus_classify, TClass};
use nilaut::nilgroup::GroupContext;
use nilaut::sample::{random_automorphism, random_element, random_k_element, random_unimodular, trial_rng};
use nilaut::sigma::necessity_check;
use nilaut::{BigInt, Context, Element, Endo, IntMatrix};
use num_traits::Signed;
use proptest::prelude::*;

fn contexts() -> Vec<Arc<Context>> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for s in [2, 3] {
            out.push(GroupContext::new(n, s).unwrap());
        }
    }
    out
}

fn sample_element(ctx: &Arc<Context>, seed: u64, k: u64) -> Element {
    random_element(ctx, 1, 4, &mut trial_rng(seed, k))
}

/// `θ(c) c^{-(-1)^m}`: fixes at even weight, inverts at odd weight.
fn parity_residue(x: &Element, image: &Element, m: usize) -> Element {
    if m.is_multiple_of(2) {
        image.multiply(&x.invert()).unwrap()
    } else {
        image.multiply(x).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(seed in any::<u64>()) {
        for ctx in contexts() {
            let (g, h, k) = (sample_element(&ctx, seed, 0), sample_element(&ctx, seed, 1), sample_element(&ctx, seed, 2));
            let one = Element::identity(&ctx);
            prop_assert_eq!(g.multiply(&h).unwrap().multiply(&k).unwrap(), g.multiply(&h.multiply(&k).unwrap()).unwrap());
            prop_assert!(g.multiply(&g.invert()).unwrap().is_identity());
            prop_assert!(g.invert().multiply(&g).unwrap().is_identity());
            prop_assert_eq!(g.multiply(&one).unwrap(), g.clone());
            prop_assert_eq!(g.power(&BigInt::from(-1)), g.invert());
            prop_assert_eq!(g.power(&BigInt::from(3)), g.multiply(&g).unwrap().multiply(&g).unwrap());
        }
    }

    #[test]
    fn projection_is_a_homomorphism(seed in any::<u64>()) {
        for ctx in contexts() {
            let (g, h) = (sample_element(&ctx, seed, 0), sample_element(&ctx, seed, 1));
            for m in 1..=ctx.class() {
                let lhs = g.multiply(&h).unwrap().project_to_class(m).unwrap();
                let rhs = g.project_to_class(m).unwrap().multiply(&h.project_to_class(m).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn weights_and_center(seed in any::<u64>()) {
        for ctx in contexts() {
            let s = ctx.class();
            let mut rng = trial_rng(seed, 7);
            let wg = 1 + (seed % s as u64) as usize;
            let g = random_element(&ctx, wg, 3, &mut rng);
            let h = random_element(&ctx, 1, 3, &mut rng);
            prop_assert!(g.multiply(&h).unwrap().weight() >= g.weight().min(h.weight()));
            let c = g.commutator(&h).unwrap();
            if g.weight() + h.weight() <= s {
                prop_assert!(c.weight() >= g.weight() + h.weight());
            } else {
                prop_assert!(c.is_identity());
            }
            let z = random_element(&ctx, s, 3, &mut rng);
            prop_assert!(z.commutator(&h).unwrap().is_identity());
        }
    }

    #[test]
    fn automorphisms_invert_and_compose(seed in any::<u64>()) {
        for ctx in contexts() {
            let mut rng = trial_rng(seed, 0);
            let (f, finv) = random_automorphism(&ctx, &mut rng);
            let (g, _) = random_automorphism(&ctx, &mut rng);
            prop_assert_eq!(f.inverse().unwrap(), finv.clone());
            prop_assert!(f.compose(&finv).unwrap().is_identity());
            let fg = f.compose(&g).unwrap();
            prop_assert_eq!(fg.abelianization_matrix(), &f.abelianization_matrix() * &g.abelianization_matrix());
            let x = sample_element(&ctx, seed, 5);
            prop_assert_eq!(fg.apply(&x).unwrap(), f.apply(&g.apply(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn filtration_is_a_descending_chain_of_subgroups(seed in any::<u64>()) {
        for ctx in contexts() {
            let mut rng = trial_rng(seed, 1);
            for m in 1..ctx.class() {
                let f = random_k_element(&ctx, m, 3, &mut rng);
                let g = random_k_element(&ctx, m, 3, &mut rng);
                prop_assert!(f.in_k(m).unwrap());
                prop_assert!(f.compose(&g).unwrap().in_k(m).unwrap());
                prop_assert!(f.inverse().unwrap().in_k(m).unwrap());
                if f.in_k(m + 1).unwrap() {
                    prop_assert!(f.in_k(m).unwrap());
                }
                prop_assert!(f.k_depth() >= m);
            }
        }
    }

    #[test]
    fn lift_then_abelianize(seed in any::<u64>()) {
        for n in [2, 3, 4] {
            let ctx = GroupContext::<BigInt>::new(n, 3).unwrap();
            let m: IntMatrix = random_unimodular(n, &mut trial_rng(seed, n as u64));
            let f = Endo::lift_matrix(&ctx, &m).unwrap();
            prop_assert_eq!(f.abelianization_matrix(), m.clone());
            prop_assert_eq!(f.reduce_class().unwrap().abelianization_matrix(), m);
        }
    }

    #[test]
    fn inner_is_a_homomorphism(seed in any::<u64>()) {
        for ctx in contexts() {
            let (g, h) = (sample_element(&ctx, seed, 0), sample_element(&ctx, seed, 1));
            let lhs = Endo::inner(&g).compose(&Endo::inner(&h)).unwrap();
            prop_assert_eq!(lhs, Endo::inner(&g.multiply(&h).unwrap()));
            prop_assert_eq!(Endo::inner(&g).is_identity(), g.weight() >= ctx.class());
        }
    }

    #[test]
    fn symmetries_act_by_parity_on_layers(seed in any::<u64>()) {
        for ctx in contexts() {
            let mut rng = trial_rng(seed, 2);
            let (b, binv) = random_automorphism(&ctx, &mut rng);
            let th = Endo::canonical_symmetry(&ctx).conjugate_with(&b, &binv).unwrap();
            prop_assert!(th.is_involution());
            for m in 1..=ctx.class() {
                let c = random_element(&ctx, m, 3, &mut rng);
                let r = parity_residue(&c, &th.apply(&c).unwrap(), m);
                prop_assert!(r.weight() > m, "m = {}", m);
                let gamma = random_k_element(&ctx, m, 2, &mut rng);
                let conj = gamma.conjugate_with(&th, &th).unwrap();
                let res = if m % 2 == 0 { conj.compose(&gamma.inverse().unwrap()) } else { conj.compose(&gamma) }.unwrap();
                prop_assert!(res.k_depth() > m);
            }
        }
    }

    #[test]
    fn ia_commutes_with_k_m_up_to_the_next_layer(seed in any::<u64>()) {
        let ctx = GroupContext::<BigInt>::new(2 + (seed % 2) as usize, 3).unwrap();
        let mut rng = trial_rng(seed, 3);
        for m in 1..=2 {
            let gamma = random_k_element(&ctx, 1, 2, &mut rng);
            let delta = random_k_element(&ctx, m, 2, &mut rng);
            let comm = gamma.inverse().unwrap()
                .compose(&delta.inverse().unwrap()).unwrap()
                .compose(&gamma).unwrap()
                .compose(&delta).unwrap();
            prop_assert!(comm.in_k(m + 1).unwrap() || m + 1 > ctx.class());
        }
    }

    #[test]
    fn necessity_for_conjugated_symmetries(seed in any::<u64>()) {
        for ctx in contexts() {
            let mut rng = trial_rng(seed, 4);
            let (b, binv) = random_automorphism(&ctx, &mut rng);
            let th = Endo::canonical_symmetry(&ctx).conjugate_with(&b, &binv).unwrap();
            let (sigma, _) = random_automorphism(&ctx, &mut rng);
            let cs: Vec<Endo> = (0..ctx.class()).map(|_| random_automorphism(&ctx, &mut rng).0).collect();
            let v = necessity_check(&th, &sigma, &cs).unwrap();
            prop_assert!(v.passed());
            prop_assert!(v.trace.last().is_identity());
        }
    }
}

#[test]
fn one_step_down_forward_containment() {
    for ctx in contexts() {
        let s = ctx.class();
        let mut rng = trial_rng(99, s as u64);
        let sample = symmetry_sample(&ctx, 8, 4, &mut rng);
        for _ in 0..20 {
            let f = random_k_element(&ctx, s - 1, 3, &mut rng);
            let class = t_plus_minus_classify(&f, &sample).unwrap();
            if f.is_identity() {
                assert_eq!(class, TClass::Both);
            } else if (s - 1) % 2 == 0 {
                assert_eq!(class, TClass::TPlus);
            } else {
                assert_eq!(class, TClass::TMinus);
            }
        }
    }
}

#[test]
fn unimodular_samples_are_unimodular() {
    let mut rng = trial_rng(1, 1);
    for _ in 0..50 {
        let m: IntMatrix = random_unimodular(3, &mut rng);
        assert!(m.det().abs() == BigInt::from(1));
    }
}
