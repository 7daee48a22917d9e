//! The sequence `σ_0 = σ`,
//! `σ_{m+1} = φ_{m+1} σ_m φ_{m+1} σ_m^{-1}` for even `m` and
//! `σ_{m+1} = φ_{m+1} σ_m φ_{m+1} σ_m` for odd `m`.
//!
//! When `θ` is a symmetry modulo IA and each `φ_i` is a conjugate of `θ`,
//! `σ_m ∈ K_m` for every `m`, so `σ_s` is trivial. For any other involution
//! one can choose the conjugates so that no term is trivial; the search
//! below builds such a choice in `GL(2, Z)` on an invariant rank-2 summand of
//! the abelianization and lifts it.

use std::sync::Arc;

use crate::aut::Endomorphism;
use crate::error::{domain, input, Result};
use crate::glz::gl2::{classify_involution2, noncentral_sigma_walk_within, InvolutionClass, Parity, WalkStep};
use crate::glz::{invariant_splitting, Matrix};
use crate::nilgroup::GroupContext;
use crate::sample;
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct SigmaTrace<T> {
    pub terms: Vec<Endomorphism<T>>,
    /// `depths[m]` is the largest `d` with `terms[m] ∈ K_d`; `0` when the
    /// term is not IA and `s + 1` when it is the identity.
    pub depths: Vec<usize>,
}

impl<T: Scalar> SigmaTrace<T> {
    pub fn last(&self) -> &Endomorphism<T> {
        self.terms.last().expect("a trace holds σ_0")
    }

    /// Abelianizations of all terms.
    pub fn abelianizations(&self) -> Vec<Matrix<T>> {
        self.terms.iter().map(|t| t.abelianization_matrix()).collect()
    }
}

/// Terms `σ_0, .., σ_len` for the automorphisms `phis[0] = φ_1, ..`.
pub fn sigma_sequence<T: Scalar>(
    sigma: &Endomorphism<T>,
    phis: &[Endomorphism<T>],
    len: usize,
) -> Result<SigmaTrace<T>> {
    if phis.len() < len {
        return input(format!("{} automorphisms supplied for {len} steps", phis.len()));
    }
    let phi_invs = phis.iter().take(len).map(|p| p.inverse()).collect::<Result<Vec<_>>>()?;
    sigma_sequence_with_inverses(sigma, &sigma.inverse()?, phis, &phi_invs, len)
}

/// [`sigma_sequence`] with the inverses of `σ` and of each `φ` supplied.
pub fn sigma_sequence_with_inverses<T: Scalar>(
    sigma: &Endomorphism<T>,
    sigma_inv: &Endomorphism<T>,
    phis: &[Endomorphism<T>],
    phi_invs: &[Endomorphism<T>],
    len: usize,
) -> Result<SigmaTrace<T>> {
    if phis.len() < len || phi_invs.len() < len {
        return input(format!(
            "{} automorphisms supplied for {len} steps",
            phis.len().min(phi_invs.len())
        ));
    }
    let ctx = sigma.context();
    if phis
        .iter()
        .chain(phi_invs)
        .chain([sigma_inv])
        .any(|p| **p.context() != **ctx)
    {
        return input("σ and φ live in different groups");
    }
    let mut terms = vec![sigma.clone()];
    let mut cur = sigma.clone();
    let mut cur_inv = sigma_inv.clone();
    for (m, (phi, phi_inv)) in phis.iter().zip(phi_invs).take(len).enumerate() {
        let head = phi.compose_unchecked(&cur).compose_unchecked(phi);
        let head_inv = phi_inv.compose_unchecked(&cur_inv).compose_unchecked(phi_inv);
        let (next, next_inv) = if m % 2 == 0 {
            (head.compose_unchecked(&cur_inv), cur.compose_unchecked(&head_inv))
        } else {
            (head.compose_unchecked(&cur), cur_inv.compose_unchecked(&head_inv))
        };
        terms.push(next.clone());
        cur = next;
        cur_inv = next_inv;
    }
    let depths = terms.iter().map(|t| t.k_depth()).collect();
    Ok(SigmaTrace { terms, depths })
}

/// The same recursion on matrices.
pub fn matrix_sigma_sequence<T: Scalar>(sigma: &Matrix<T>, phis: &[Matrix<T>]) -> Result<Vec<Matrix<T>>> {
    let mut out = vec![sigma.clone()];
    let mut cur = sigma.clone();
    for (m, phi) in phis.iter().enumerate() {
        let last = if m % 2 == 0 {
            cur.inverse_unimodular()?
        } else {
            cur.clone()
        };
        cur = &(&(phi * &cur) * phi) * &last;
        out.push(cur.clone());
    }
    Ok(out)
}

fn check_involution<T: Scalar>(theta: &Endomorphism<T>) -> Result<()> {
    if theta.is_identity() || !theta.is_involution() {
        return domain(format!("{theta} is not an involution"));
    }
    Ok(())
}

#[derive(Clone)]
pub struct NecessityVerdict<T> {
    pub trace: SigmaTrace<T>,
    /// first `m >= 1` with `depths[m] < m`
    pub violation: Option<usize>,
}

impl<T> NecessityVerdict<T> {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Builds the length-`s` trace with `φ_i = c_i θ c_i^{-1}` and checks
/// `σ_m ∈ K_m` for `1 <= m <= s`.
pub fn necessity_check<T: Scalar>(
    theta: &Endomorphism<T>,
    sigma: &Endomorphism<T>,
    conjugators: &[Endomorphism<T>],
) -> Result<NecessityVerdict<T>> {
    check_involution(theta)?;
    let s = theta.context().class();
    let invs = conjugators
        .iter()
        .take(s)
        .map(|c| c.inverse())
        .collect::<Result<Vec<_>>>()?;
    necessity_check_with_inverses(theta, sigma, &sigma.inverse()?, conjugators, &invs)
}

/// [`necessity_check`] with the inverses of `σ` and the conjugators
/// supplied. The `φ_i` are involutions, so they are their own inverses.
pub fn necessity_check_with_inverses<T: Scalar>(
    theta: &Endomorphism<T>,
    sigma: &Endomorphism<T>,
    sigma_inv: &Endomorphism<T>,
    conjugators: &[Endomorphism<T>],
    conjugator_invs: &[Endomorphism<T>],
) -> Result<NecessityVerdict<T>> {
    check_involution(theta)?;
    let s = theta.context().class();
    if conjugators.len() < s || conjugator_invs.len() < s {
        return input(format!("{s} conjugators needed"));
    }
    let phis = conjugators
        .iter()
        .zip(conjugator_invs)
        .take(s)
        .map(|(c, ci)| theta.conjugate_with(c, ci))
        .collect::<Result<Vec<_>>>()?;
    let trace = sigma_sequence_with_inverses(sigma, sigma_inv, &phis, &phis, s)?;
    let violation = (1..=s).find(|&m| trace.depths[m] < m);
    Ok(NecessityVerdict { trace, violation })
}

/// A choice of `σ` and conjugates `θ_i` of `θ` with `σ_s ≠ id`.
#[derive(Clone)]
pub struct Witness<T> {
    pub sigma: Endomorphism<T>,
    pub conjugators: Vec<Endomorphism<T>>,
    pub thetas: Vec<Endomorphism<T>>,
    pub trace: SigmaTrace<T>,
    /// The matrix walk on the invariant rank-2 summand that was lifted.
    pub walk: Vec<WalkStep<T>>,
    /// Basis adapted to the splitting used for lifting (columns).
    pub adapted_basis: Matrix<T>,
}

impl<T: Scalar> Witness<T> {
    /// `σ_s` is non-trivial, certified by its abelianization.
    pub fn is_certified(&self) -> bool {
        !self.trace.last().abelianization_matrix().is_identity()
    }
}

#[derive(Clone)]
pub enum WitnessSearch<T> {
    Found(Box<Witness<T>>),
    NoWitness { reason: String },
}

/// Search budget: the family parameter ranges over `[-m_bound, m_bound]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub m_bound: i64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            m_bound: crate::glz::gl2::DEFAULT_M_BOUND,
        }
    }
}

fn embed<T: Scalar>(w: &Matrix<T>, winv: &Matrix<T>, block: &Matrix<T>, n: usize) -> Matrix<T> {
    let local = if n > 2 {
        block.block_diag(&Matrix::identity(n - 2))
    } else {
        block.clone()
    };
    &(w * &local) * winv
}

/// Starting matrix of the walk on the rank-2 summand.
pub fn walk_seed<T: Scalar>() -> Matrix<T> {
    Matrix::from_i64(&[[1, 1], [0, 1]])
}

pub fn find_nontrivial_witness<T: Scalar>(theta: &Endomorphism<T>, budget: Budget) -> Result<WitnessSearch<T>> {
    check_involution(theta)?;
    let ctx = theta.context();
    let n = ctx.rank();
    let s = ctx.class();
    let f = theta.abelianization_matrix();
    if f.is_identity() || (-&f).is_identity() {
        return Ok(WitnessSearch::NoWitness {
            reason: "abelianization is ±I, so the involution is a symmetry modulo IA".into(),
        });
    }
    let split = invariant_splitting(&f)?;
    let (class, pg) = classify_involution2(&split.restriction)?;
    let parity = match class {
        InvolutionClass::Diagonal => Parity::Even,
        InvolutionClass::Swap => Parity::Odd,
        _ => unreachable!("splitting restriction is non-central"),
    };
    let w = split.adapted_basis.clone();
    let winv = w.inverse_unimodular()?;
    let walk = match noncentral_sigma_walk_within(&walk_seed(), s, parity, budget.m_bound) {
        Ok(walk) => walk,
        Err(crate::Error::Search(reason)) => return Ok(WitnessSearch::NoWitness { reason }),
        Err(e) => return Err(e),
    };
    let sigma = Endomorphism::lift_matrix(ctx, &embed(&w, &winv, &walk_seed(), n))?;
    let pg_inv = pg.inverse_unimodular()?;
    let mut conjugators = Vec::with_capacity(s);
    let mut thetas = Vec::with_capacity(s);
    for step in &walk {
        let (c2, pf) = classify_involution2(&step.involution)?;
        debug_assert_eq!(c2, class);
        let q = &pf * &pg_inv;
        let cm = embed(&w, &winv, &q, n);
        let c = Endomorphism::lift_matrix(ctx, &cm)?;
        thetas.push(theta.conjugate(&c)?);
        conjugators.push(c);
    }
    let trace = sigma_sequence(&sigma, &thetas, s)?;
    Ok(WitnessSearch::Found(Box::new(Witness {
        sigma,
        conjugators,
        thetas,
        trace,
        walk,
        adapted_basis: w,
    })))
}

/// Sampling parameters of an accepting verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleCertificate {
    pub seed: u64,
    pub samples: usize,
}

#[derive(Clone)]
pub enum SymmetryVerdict<T> {
    /// Every sampled necessity check passed and the witness search found
    /// nothing. This is evidence, not proof.
    Accepted(SampleCertificate),
    RejectedWithWitness(Box<Witness<T>>),
}

pub fn is_symmetry_mod_ia<T: Scalar>(
    theta: &Endomorphism<T>,
    budget: Budget,
    samples: usize,
    seed: u64,
) -> Result<SymmetryVerdict<T>> {
    if let WitnessSearch::Found(w) = find_nontrivial_witness(theta, budget)? {
        if w.is_certified() {
            return Ok(SymmetryVerdict::RejectedWithWitness(w));
        }
    }
    let ctx: &Arc<GroupContext<T>> = theta.context();
    let s = ctx.class();
    for t in 0..samples {
        let mut rng = sample::trial_rng(seed, t as u64);
        let (sigma, sigma_inv) = sample::random_automorphism(ctx, &mut rng);
        let (conjugators, invs): (Vec<_>, Vec<_>) = (0..s).map(|_| sample::random_automorphism(ctx, &mut rng)).unzip();
        let verdict = necessity_check_with_inverses(theta, &sigma, &sigma_inv, &conjugators, &invs)?;
        if !verdict.passed() {
            let thetas = conjugators
                .iter()
                .map(|c| theta.conjugate(c))
                .collect::<Result<Vec<_>>>()?;
            return Ok(SymmetryVerdict::RejectedWithWitness(Box::new(Witness {
                sigma,
                conjugators,
                thetas,
                trace: verdict.trace,
                walk: Vec::new(),
                adapted_basis: Matrix::identity(ctx.rank()),
            })));
        }
    }
    Ok(SymmetryVerdict::Accepted(SampleCertificate { seed, samples }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::GroupElement;
    use num_bigint::BigInt;

    type E = Endomorphism<BigInt>;
    type M = Matrix<BigInt>;

    fn m(rows: [[i64; 2]; 2]) -> M {
        M::from_i64(&rows)
    }

    #[test]
    fn identity_sigma_stays_trivial() {
        let ctx = GroupContext::new(2, 2).unwrap();
        let th = E::canonical_symmetry(&ctx);
        let tr = sigma_sequence(&E::identity(&ctx), &[th.clone(), th], 2).unwrap();
        assert!(tr.terms.iter().all(|t| t.is_identity()));
        assert_eq!(tr.depths, [3, 3, 3]);
    }

    #[test]
    fn swap_commutes_with_symmetry() {
        let ctx = GroupContext::new(2, 2).unwrap();
        let th = E::canonical_symmetry(&ctx);
        let swap = E::lift_matrix(&ctx, &m([[0, 1], [1, 0]])).unwrap();
        let tr = sigma_sequence(&swap, &[th.clone(), th], 2).unwrap();
        assert!(tr.terms[1].is_identity());
        assert!(tr.terms[2].is_identity());
    }

    #[test]
    fn first_step_abelianization() {
        let ctx = GroupContext::new(2, 2).unwrap();
        let s = E::lift_matrix(&ctx, &m([[1, 1], [0, 1]])).unwrap();
        let f = E::lift_matrix(&ctx, &m([[1, 0], [0, -1]])).unwrap();
        let tr = sigma_sequence(&s, &[f], 1).unwrap();
        assert_eq!(tr.terms[1].abelianization_matrix(), m([[1, -2], [0, 1]]));
        assert!(sigma_sequence(&s, &[], 1).is_err());
    }

    #[test]
    fn necessity_for_canonical_symmetry() {
        let ctx = GroupContext::new(2, 3).unwrap();
        let th = E::canonical_symmetry(&ctx);
        let mut rng = sample::trial_rng(3, 0);
        let (sigma, _) = sample::random_automorphism(&ctx, &mut rng);
        let cs: Vec<E> = (0..3).map(|_| sample::random_automorphism(&ctx, &mut rng).0).collect();
        let v = necessity_check(&th, &sigma, &cs).unwrap();
        assert!(v.passed(), "{:?}", v.trace.depths);
        assert!(v.trace.last().is_identity());
        assert!(necessity_check(&E::identity(&ctx), &sigma, &cs).is_err());
    }

    #[test]
    fn perturbed_symmetry_passes() {
        let ctx = GroupContext::new(2, 2).unwrap();
        let th = E::canonical_symmetry(&ctx);
        let x1 = GroupElement::generator(&ctx, 0).unwrap();
        let t = th.compose(&E::inner(&x1)).unwrap();
        assert!(t.is_involution());
        let sigma = E::lift_matrix(&ctx, &m([[2, 1], [1, 1]])).unwrap();
        let v = necessity_check(&t, &sigma, &[E::identity(&ctx), sigma.clone()]).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn diagonal_witness_trace() {
        let ctx = GroupContext::new(2, 2).unwrap();
        let th = E::lift_matrix(&ctx, &m([[1, 0], [0, -1]])).unwrap();
        let WitnessSearch::Found(w) = find_nontrivial_witness(&th, Budget::default()).unwrap() else {
            panic!("expected a witness");
        };
        assert!(w.is_certified());
        assert_eq!(w.sigma, E::lift_matrix(&ctx, &m([[1, 1], [0, 1]])).unwrap());
        assert_eq!(w.thetas[0], th);
        let ab = w.trace.abelianizations();
        assert_eq!(ab[1], m([[1, -2], [0, 1]]));
        assert_eq!(ab[2], m([[-3, 8], [-8, 21]]));
        assert_eq!(w.thetas[1].abelianization_matrix(), m([[1, 0], [2, -1]]));
    }

    #[test]
    fn swap_witness_and_symmetry_no_witness() {
        let ctx = GroupContext::new(2, 2).unwrap();
        let swap = E::lift_matrix(&ctx, &m([[0, 1], [1, 0]])).unwrap();
        let WitnessSearch::Found(w) = find_nontrivial_witness(&swap, Budget::default()).unwrap() else {
            panic!("expected a witness");
        };
        assert!(w.is_certified());
        let th = E::canonical_symmetry(&ctx);
        assert!(matches!(
            find_nontrivial_witness(&th, Budget::default()).unwrap(),
            WitnessSearch::NoWitness { .. }
        ));
    }

    #[test]
    fn symmetry_verdicts() {
        let ctx = GroupContext::new(2, 2).unwrap();
        let th = E::canonical_symmetry(&ctx);
        assert!(matches!(
            is_symmetry_mod_ia(&th, Budget::default(), 5, 1).unwrap(),
            SymmetryVerdict::Accepted(_)
        ));
        let d = E::lift_matrix(&ctx, &m([[1, 0], [0, -1]])).unwrap();
        assert!(matches!(
            is_symmetry_mod_ia(&d, Budget::default(), 5, 1).unwrap(),
            SymmetryVerdict::RejectedWithWitness(_)
        ));
        assert!(is_symmetry_mod_ia(&E::identity(&ctx), Budget::default(), 5, 1).is_err());
    }

    #[test]
    fn witness_in_rank_three() {
        let ctx = GroupContext::new(3, 3).unwrap();
        let f = M::from_i64(&[[0, 1, 0], [1, 0, 0], [0, 0, -1]]);
        let th = E::lift_matrix(&ctx, &f).unwrap();
        let WitnessSearch::Found(w) = find_nontrivial_witness(&th, Budget::default()).unwrap() else {
            panic!("expected a witness");
        };
        assert!(w.is_certified());
        let mats: Vec<M> = w.thetas.iter().map(|t| t.abelianization_matrix()).collect();
        let expected = matrix_sigma_sequence(&w.sigma.abelianization_matrix(), &mats).unwrap();
        assert_eq!(w.trace.abelianizations(), expected);
    }
}
