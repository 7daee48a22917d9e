//! Seeded random sampling of group elements, matrices and automorphisms.
//!
//! A campaign with master seed `s` runs trial `t` on its own generator
//! [`trial_rng`]`(s, t)`, so results do not depend on how trials are
//! scheduled.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::aut::Endomorphism;
use crate::glz::Matrix;
use crate::nilgroup::{GroupContext, GroupElement};
use crate::scalar::{Ring, Scalar};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial`: `splitmix64(master ^ splitmix64(trial))`.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial))
}

pub fn trial_rng(master: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, trial))
}

fn nonzero<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> i64 {
    let k = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

/// Product of `len` transvections `I + k E_ij` with `0 < |k| <= bound`;
/// the identity when `n < 2`, where there are none.
pub fn elementary_product<T: Ring, G: Rng + ?Sized>(n: usize, len: usize, bound: i64, rng: &mut G) -> Matrix<T> {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..len {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut e = Matrix::identity(n);
        e[(i, j)] = T::from(nonzero(rng, bound));
        m = &m * &e;
    }
    m
}

/// Unimodular matrix: 5 to 15 transvections with entries in `[-3, 3]`,
/// followed by a random sign change of one coordinate half of the time.
pub fn random_unimodular<T: Scalar, G: Rng + ?Sized>(n: usize, rng: &mut G) -> Matrix<T> {
    let len = rng.gen_range(5..=15);
    let mut m = elementary_product(n, len, 3, rng);
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..n);
        m.negate_col(i);
    }
    m
}

/// Exponents uniform in `[-bound, bound]` on basis elements of weight at
/// least `min_weight`.
pub fn random_element<T: Scalar, G: Rng + ?Sized>(
    ctx: &Arc<GroupContext<T>>,
    min_weight: usize,
    bound: i64,
    rng: &mut G,
) -> GroupElement<T> {
    let exps = ctx
        .basis()
        .iter()
        .map(|b| {
            if b.weight >= min_weight {
                T::from(rng.gen_range(-bound..=bound))
            } else {
                T::zero()
            }
        })
        .collect();
    GroupElement::from_exponents_unchecked(ctx, exps)
}

/// An element of weight exactly `w`, `1 <= w <= class`.
pub fn random_element_of_weight<T: Scalar, G: Rng + ?Sized>(
    ctx: &Arc<GroupContext<T>>,
    w: usize,
    bound: i64,
    rng: &mut G,
) -> GroupElement<T> {
    let mut g = random_element(ctx, w, bound, rng);
    let range = ctx.weight_range(w);
    if g.exponents()[range.clone()].iter().all(|e| e.is_zero()) {
        let k = rng.gen_range(range);
        let mut exps = g.into_exponents();
        exps[k] = T::from(nonzero(rng, bound));
        g = GroupElement::from_exponents_unchecked(ctx, exps);
    }
    g
}

/// An element of `K_m`: `x_i ↦ x_i c_i` with random `c_i ∈ N_{m+1}`.
/// Returns the identity when `m >= class`.
pub fn random_k_element<T: Scalar, G: Rng + ?Sized>(
    ctx: &Arc<GroupContext<T>>,
    m: usize,
    bound: i64,
    rng: &mut G,
) -> Endomorphism<T> {
    let images = (0..ctx.rank())
        .map(|i| {
            let x = GroupElement::generator(ctx, i).expect("in range");
            if m >= ctx.class() {
                x
            } else {
                x.mul_unchecked(&random_element(ctx, m + 1, bound, rng))
            }
        })
        .collect();
    Endomorphism::new(ctx, images).expect("same context")
}

/// A random automorphism and its inverse: 5 to 15 Nielsen moves
/// (`x_i ↦ x_i x_j^k`, `x_i ↦ x_j^k x_i`, `x_i ↦ x_i^{-1}`) followed by an
/// IA factor.
pub fn random_automorphism<T: Scalar, G: Rng + ?Sized>(
    ctx: &Arc<GroupContext<T>>,
    rng: &mut G,
) -> (Endomorphism<T>, Endomorphism<T>) {
    let n = ctx.rank();
    let len = rng.gen_range(5..=15);
    let mut moves = Vec::with_capacity(len);
    for _ in 0..len {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = T::from(nonzero(rng, 3));
        moves.push((i, j, k, rng.gen_range(0..3u8)));
    }
    // f = μ_1 ∘ .. ∘ μ_L and f^{-1} = μ_L^{-1} ∘ .. ∘ μ_1^{-1}, both built by
    // precomposing with one move at a time, which only touches image i
    let gens: Vec<GroupElement<T>> = (0..n).map(|i| GroupElement::generator(ctx, i).unwrap()).collect();
    let precompose = |img: &mut Vec<GroupElement<T>>, &(i, j, ref k, kind): &(usize, usize, T, u8), inverse: bool| {
        let k = if inverse { -k.clone() } else { k.clone() };
        img[i] = match kind {
            0 => img[i].mul_unchecked(&img[j].power(&k)),
            1 => img[j].power(&k).mul_unchecked(&img[i]),
            _ => img[i].invert(),
        };
    };
    let mut fi = gens.clone();
    for mv in &moves {
        precompose(&mut fi, mv, false);
    }
    let mut gi = gens;
    for mv in moves.iter().rev() {
        precompose(&mut gi, mv, true);
    }
    let mut f = Endomorphism::new(ctx, fi).unwrap();
    let mut finv = Endomorphism::new(ctx, gi).unwrap();
    if ctx.class() >= 2 {
        let ia = random_k_element(ctx, 1, 2, rng);
        let iainv = ia.inverse().expect("IA maps are invertible");
        f = f.compose_unchecked(&ia);
        finv = iainv.compose_unchecked(&finv);
    }
    (f, finv)
}
