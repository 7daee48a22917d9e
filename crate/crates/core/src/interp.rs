//! Executable pieces of the interpretation of `Aut N` in lattice data:
//! the `T⁺` / `T⁻` classes, inner automorphisms as products of two
//! symmetries, `Inn N ≅ A` at class 2, a finite sample of the structure on
//! `A`, `Aut A` and direct summands, graph encodings of endomorphisms, and
//! the integers inside `GL(2, Z)` acting on `Z^2`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use crate::aut::Endomorphism;
use crate::error::{domain, input, Result};
use crate::glz::lattice::{fixed_lattice, relation_r, Sublattice};
use crate::glz::Matrix;
use crate::nilgroup::{GroupContext, GroupElement};
use crate::sample;
use crate::scalar::Scalar;

/// Abelianized conjugator of an inner automorphism at class 2.
pub fn inn_to_abelian<T: Scalar>(f: &Endomorphism<T>, conjugator: &GroupElement<T>) -> Result<Vec<T>> {
    let ctx = f.context();
    if ctx.class() != 2 {
        return input(format!("Inn N ≅ A is implemented at class 2, not {}", ctx.class()));
    }
    if Endomorphism::inner(conjugator) != *f {
        return input("supplied conjugator does not realize the automorphism");
    }
    Ok(conjugator.abelianized())
}

/// Conjugation by `x_1^{v_1} ⋯ x_n^{v_n}`.
pub fn abelian_to_inn<T: Scalar>(ctx: &Arc<GroupContext<T>>, v: &[T]) -> Result<Endomorphism<T>> {
    if v.len() != ctx.rank() {
        return input(format!("expected a vector of length {}", ctx.rank()));
    }
    let mut exps = vec![T::zero(); ctx.basis_len()];
    exps[..v.len()].clone_from_slice(v);
    Ok(Endomorphism::inner(&GroupElement::from_exponents(ctx, exps)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    Canonical,
    /// `b θ b^{-1}` for a random automorphism `b`
    Conjugate,
    /// a conjugate composed with a random IA automorphism
    IaPerturbed,
}

impl Stratum {
    pub fn name(self) -> &'static str {
        match self {
            Stratum::Canonical => "canonical",
            Stratum::Conjugate => "conjugate",
            Stratum::IaPerturbed => "ia-perturbed",
        }
    }
}

#[derive(Clone)]
pub struct SampledSymmetry<T> {
    pub stratum: Stratum,
    pub theta: Endomorphism<T>,
    pub theta_inv: Endomorphism<T>,
}

/// The canonical symmetry, `conjugates` conjugates of it and `perturbed`
/// conjugates composed with IA automorphisms.
pub fn symmetry_sample<T: Scalar, G: Rng + ?Sized>(
    ctx: &Arc<GroupContext<T>>,
    conjugates: usize,
    perturbed: usize,
    rng: &mut G,
) -> Vec<SampledSymmetry<T>> {
    let th = Endomorphism::canonical_symmetry(ctx);
    let mut out = vec![SampledSymmetry {
        stratum: Stratum::Canonical,
        theta: th.clone(),
        theta_inv: th.clone(),
    }];
    let conj = |rng: &mut G| {
        let (b, binv) = sample::random_automorphism(ctx, rng);
        let t = th.conjugate_with(&b, &binv).expect("same context");
        (t.clone(), t)
    };
    for _ in 0..conjugates {
        let (theta, theta_inv) = conj(rng);
        out.push(SampledSymmetry {
            stratum: Stratum::Conjugate,
            theta,
            theta_inv,
        });
    }
    for _ in 0..perturbed {
        let (t, _) = conj(rng);
        let ia = sample::random_k_element(ctx, 1, 2, rng);
        let ia_inv = ia.inverse().expect("IA maps are invertible");
        out.push(SampledSymmetry {
            stratum: Stratum::IaPerturbed,
            theta: t.compose_unchecked(&ia),
            theta_inv: ia_inv.compose_unchecked(&t),
        });
    }
    out
}

/// Outcome of testing `θ f θ^{-1} = f` and `θ f θ^{-1} = f^{-1}` over a
/// symmetry sample. `TPlus`, `TMinus` and `Both` are sampled verdicts;
/// `Neither` is exact and names a violating symmetry for each equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TClass {
    TPlus,
    TMinus,
    /// both equations hold, which forces `f^2 = id`
    Both,
    Neither {
        plus_violation: usize,
        minus_violation: usize,
    },
}

impl TClass {
    pub fn name(self) -> &'static str {
        match self {
            TClass::TPlus => "T+",
            TClass::TMinus => "T-",
            TClass::Both => "T+ and T-",
            TClass::Neither { .. } => "neither",
        }
    }

    pub fn is_plus(self) -> bool {
        matches!(self, TClass::TPlus | TClass::Both)
    }

    pub fn is_minus(self) -> bool {
        matches!(self, TClass::TMinus | TClass::Both)
    }
}

pub fn t_plus_minus_classify<T: Scalar>(f: &Endomorphism<T>, sample: &[SampledSymmetry<T>]) -> Result<TClass> {
    if sample.is_empty() {
        return input("the symmetry sample is empty");
    }
    let finv = f.inverse()?;
    let mut plus_violation = None;
    let mut minus_violation = None;
    for (i, s) in sample.iter().enumerate() {
        let c = f.conjugate_with(&s.theta, &s.theta_inv)?;
        if plus_violation.is_none() && c != *f {
            plus_violation = Some(i);
        }
        if minus_violation.is_none() && c != finv {
            minus_violation = Some(i);
        }
        if plus_violation.is_some() && minus_violation.is_some() {
            break;
        }
    }
    Ok(match (plus_violation, minus_violation) {
        (None, None) => TClass::Both,
        (None, Some(_)) => TClass::TPlus,
        (Some(_), None) => TClass::TMinus,
        (Some(p), Some(m)) => TClass::Neither {
            plus_violation: p,
            minus_violation: m,
        },
    })
}

/// `θ_1` the canonical symmetry and `θ_2`: `x ↦ x^{-1}`,
/// `y ↦ x^{-1} y^{-1} x` for the other generators, so that
/// `θ_1 ∘ θ_2` is conjugation by `x`. `θ_2` inverts the basis
/// `{x} ∪ {y x : y ≠ x}`.
pub fn factor_inner_as_symmetries<T: Scalar>(
    ctx: &Arc<GroupContext<T>>,
    generator: usize,
) -> Result<(Endomorphism<T>, Endomorphism<T>)> {
    let x = GroupElement::generator(ctx, generator)?;
    let xinv = x.invert();
    let images = (0..ctx.rank())
        .map(|j| {
            if j == generator {
                xinv.clone()
            } else {
                let y = GroupElement::generator(ctx, j).expect("in range");
                xinv.mul_unchecked(&y.invert()).mul_unchecked(&x)
            }
        })
        .collect();
    Ok((Endomorphism::canonical_symmetry(ctx), Endomorphism::new(ctx, images)?))
}

/// The basis `{x} ∪ {y x : y ≠ x}` inverted by the second factor.
pub fn factor_basis<T: Scalar>(ctx: &Arc<GroupContext<T>>, generator: usize) -> Result<Vec<GroupElement<T>>> {
    let x = GroupElement::generator(ctx, generator)?;
    Ok((0..ctx.rank())
        .map(|j| {
            if j == generator {
                x.clone()
            } else {
                GroupElement::generator(ctx, j).expect("in range").mul_unchecked(&x)
            }
        })
        .collect())
}

type Pairs = Vec<(usize, usize)>;

/// Finite sample of the structure with sorts `A = Z^n`, `Aut A` and the
/// direct summands of `A`, with its relations listed as index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureM<T> {
    pub rank: usize,
    pub seed: u64,
    pub samples: usize,
    pub vectors: Vec<Vec<T>>,
    pub automorphisms: Vec<Matrix<T>>,
    pub summands: Vec<Sublattice<T>>,
    /// candidates refused admission to the summand sort
    pub rejected: Vec<Sublattice<T>>,
    /// `(i, j)` for each diagonalizable involution `automorphisms[i]` whose
    /// fixed lattice is `summands[j]`
    pub involution_fixed: Vec<(usize, usize)>,
    /// `(v, d)`: `vectors[v] ∈ summands[d]`
    pub membership: Vec<(usize, usize)>,
    /// `(d, e)`: `summands[d] ⊆ summands[e]`
    pub inclusion: Vec<(usize, usize)>,
    /// `(d, e)`: `A = summands[d] ⊕ summands[e]`
    pub complement: Vec<(usize, usize)>,
    /// `(a, v, w)`: `automorphisms[a] · vectors[v] = vectors[w]`
    pub action: Vec<(usize, usize, usize)>,
}

impl<T: Scalar> StructureM<T> {
    fn add_summand(&mut self, l: Sublattice<T>) -> Option<usize> {
        if let Some(i) = self.summands.iter().position(|d| *d == l) {
            return Some(i);
        }
        if !l.is_direct_summand() {
            if !self.rejected.contains(&l) {
                self.rejected.push(l);
            }
            return None;
        }
        self.summands.push(l);
        Some(self.summands.len() - 1)
    }

    fn relations(&self) -> Result<(Pairs, Pairs, Pairs)> {
        let mut membership = Vec::new();
        for (v, x) in self.vectors.iter().enumerate() {
            for (d, l) in self.summands.iter().enumerate() {
                if l.contains(x)? {
                    membership.push((v, d));
                }
            }
        }
        let mut inclusion = Vec::new();
        let mut complement = Vec::new();
        for (d, a) in self.summands.iter().enumerate() {
            for (e, b) in self.summands.iter().enumerate() {
                if b.includes(a)? {
                    inclusion.push((d, e));
                }
                if relation_r(a, b)? {
                    complement.push((d, e));
                }
            }
        }
        Ok((membership, inclusion, complement))
    }

    /// Recomputes every relation and admission decision.
    pub fn verify(&self) -> Result<bool> {
        let (membership, inclusion, complement) = self.relations()?;
        let sorts_ok = self.summands.iter().all(|d| d.is_direct_summand())
            && self.rejected.iter().all(|d| !d.is_direct_summand())
            && self.automorphisms.iter().all(|a| a.is_unimodular());
        let action_ok = self
            .action
            .iter()
            .all(|&(a, v, w)| self.automorphisms[a].apply(&self.vectors[v]) == self.vectors[w]);
        let fixed_ok = self
            .involution_fixed
            .iter()
            .all(|&(i, j)| fixed_lattice(&self.automorphisms[i]) == self.summands[j]);
        Ok(sorts_ok
            && action_ok
            && fixed_ok
            && membership == self.membership
            && inclusion == self.inclusion
            && complement == self.complement)
    }

    pub fn summand_index(&self, l: &Sublattice<T>) -> Option<usize> {
        self.summands.iter().position(|d| d == l)
    }
}

/// Builds the sample: coordinate summands, the fixed lattices of `samples`
/// diagonalizable involutions, `samples` random rank-one candidates (kept
/// only when they are summands), `samples` random automorphisms and
/// `samples` random vectors closed under one application of each
/// automorphism.
pub fn build_structure_m<T: Scalar>(n: usize, samples: usize, seed: u64) -> Result<StructureM<T>> {
    if n < 2 {
        return input("the structure needs rank at least 2");
    }
    let mut rng = sample::trial_rng(seed, 0);
    let mut m = StructureM {
        rank: n,
        seed,
        samples,
        vectors: Vec::new(),
        automorphisms: Vec::new(),
        summands: Vec::new(),
        rejected: Vec::new(),
        involution_fixed: Vec::new(),
        membership: Vec::new(),
        inclusion: Vec::new(),
        complement: Vec::new(),
        action: Vec::new(),
    };
    let unit = |i: usize| -> Vec<T> { (0..n).map(|k| if k == i { T::one() } else { T::zero() }).collect() };
    m.add_summand(Sublattice::zero(n));
    m.add_summand(Sublattice::full(n));
    for i in 0..n {
        m.add_summand(Sublattice::new(n, vec![unit(i)])?);
    }
    let mut twice = unit(0);
    twice[0] = T::from(2);
    m.add_summand(Sublattice::new(n, vec![twice])?);

    // diagonalizable involutions: conjugates of diag(1, -1, ±1, ..)
    let mut diag = Matrix::identity(n);
    diag[(1, 1)] = -T::one();
    let mut involutions = vec![diag.clone()];
    for _ in 0..samples {
        let mut d = diag.clone();
        for k in 2..n {
            if rng.gen_bool(0.5) {
                d[(k, k)] = -T::one();
            }
        }
        let q: Matrix<T> = sample::random_unimodular(n, &mut rng);
        involutions.push(&(&q * &d) * &q.inverse_unimodular()?);
    }
    for f in involutions {
        let j = m.add_summand(fixed_lattice(&f)).expect("fixed lattices are summands");
        let i = match m.automorphisms.iter().position(|a| *a == f) {
            Some(i) => i,
            None => {
                m.automorphisms.push(f);
                m.automorphisms.len() - 1
            }
        };
        if !m.involution_fixed.contains(&(i, j)) {
            m.involution_fixed.push((i, j));
        }
    }
    for _ in 0..samples {
        let v: Vec<T> = (0..n).map(|_| T::from(rng.gen_range(-3..=3))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            m.add_summand(Sublattice::new(n, vec![v])?);
        }
    }
    for _ in 0..samples {
        let a = sample::random_unimodular(n, &mut rng);
        if !m.automorphisms.contains(&a) {
            m.automorphisms.push(a);
        }
    }

    let mut index: HashMap<Vec<T>, usize> = HashMap::new();
    let mut push = |m: &mut StructureM<T>, v: Vec<T>| -> usize {
        *index.entry(v.clone()).or_insert_with(|| {
            m.vectors.push(v);
            m.vectors.len() - 1
        })
    };
    for i in 0..n {
        push(&mut m, unit(i));
    }
    for _ in 0..samples {
        let v: Vec<T> = (0..n).map(|_| T::from(rng.gen_range(-5..=5))).collect();
        push(&mut m, v);
    }
    let base = m.vectors.len();
    for a in 0..m.automorphisms.len() {
        for v in 0..base {
            let image = m.automorphisms[a].apply(&m.vectors[v]);
            let w = push(&mut m, image);
            m.action.push((a, v, w));
        }
    }
    let (membership, inclusion, complement) = m.relations()?;
    m.membership = membership;
    m.inclusion = inclusion;
    m.complement = complement;
    if !m.verify()? {
        return domain("structure failed its own verification");
    }
    Ok(m)
}

/// Parameters of a graph encoding: `A = B ⊕ C` with an isomorphism
/// `ι: B → C` given in the Hermite bases of `B` and `C`.
#[derive(Clone, Debug)]
pub struct GraphFrame<T> {
    pub b: Sublattice<T>,
    pub c: Sublattice<T>,
    pub iota: Matrix<T>,
}

impl<T: Scalar> GraphFrame<T> {
    pub fn new(b: Sublattice<T>, c: Sublattice<T>, iota: Matrix<T>) -> Result<Self> {
        if !relation_r(&b, &c)? {
            return domain("B and C are not complementary");
        }
        let r = b.rank();
        if c.rank() != r || iota.rows() != r || iota.cols() != r {
            return input(format!(
                "rank mismatch: B has rank {r}, C has rank {}, ι is {}x{}",
                c.rank(),
                iota.rows(),
                iota.cols()
            ));
        }
        if !iota.is_unimodular() {
            return domain("ι is not an isomorphism");
        }
        Ok(GraphFrame { b, c, iota })
    }

    /// `B = <e_1..e_r>`, `C = <e_{r+1}..e_{2r}>`, `ι = I`.
    pub fn standard(r: usize) -> Self {
        let n = 2 * r;
        let unit = |i: usize| -> Vec<T> { (0..n).map(|k| if k == i { T::one() } else { T::zero() }).collect() };
        let b = Sublattice::new(n, (0..r).map(unit).collect()).expect("ambient");
        let c = Sublattice::new(n, (r..n).map(unit).collect()).expect("ambient");
        GraphFrame {
            b,
            c,
            iota: Matrix::identity(r),
        }
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    fn combine(coeffs: &[T], basis: &Matrix<T>) -> Vec<T> {
        let mut out = vec![T::zero(); basis.cols()];
        for (k, a) in coeffs.iter().enumerate() {
            for (o, x) in out.iter_mut().zip(basis.row(k)) {
                o.add_mul(a, x);
            }
        }
        out
    }

    /// The graph `{b + ι(α b) : b ∈ B}` of an endomorphism `α` of `B`
    /// written in the Hermite basis of `B` (columns are images).
    pub fn encode(&self, alpha: &Matrix<T>) -> Result<Sublattice<T>> {
        let r = self.rank();
        if alpha.rows() != r || alpha.cols() != r {
            return input(format!("expected an endomorphism of rank {r}"));
        }
        let ia = &self.iota * alpha;
        let rows = (0..r)
            .map(|i| {
                let cpart = Self::combine(&ia.column(i), self.c.basis());
                self.b
                    .basis()
                    .row(i)
                    .iter()
                    .zip(cpart)
                    .map(|(x, y)| x.clone() + y)
                    .collect()
            })
            .collect();
        Sublattice::new(self.b.ambient(), rows)
    }

    /// `C`-coordinates of `u - b` for the unique `u ∈ U` with `u - b ∈ C`.
    fn graph_offset(&self, u: &Sublattice<T>, b: &[T]) -> Result<Vec<T>> {
        let r = self.rank();
        let stacked = u.basis().stack(self.c.basis())?;
        let inv = stacked.inverse_unimodular()?;
        // b = x * stacked as rows, so x = b * stacked^-1
        let x = inv.transpose().apply(b);
        Ok(x[r..].iter().map(|y| -y.clone()).collect())
    }

    /// The endomorphism of `B` whose graph is `u`.
    pub fn decode(&self, u: &Sublattice<T>) -> Result<Matrix<T>> {
        let r = self.rank();
        if u.ambient() != self.b.ambient() || u.rank() != r {
            return input("graph has the wrong rank");
        }
        if !relation_r(u, &self.c)? {
            return domain("not the graph of a map B → C: it does not complement C");
        }
        let iota_inv = self.iota.inverse_unimodular()?;
        let cols = (0..r)
            .map(|i| Ok(iota_inv.apply(&self.graph_offset(u, self.b.basis().row(i))?)))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(&cols)
    }

    /// Graph of `α_1 ∘ α_2`, computed from the two graphs by following
    /// `b ↦ ι^{-1}(offset_2(b)) ↦ offset_1(..)` without decoding either.
    pub fn compose_graphs(&self, u1: &Sublattice<T>, u2: &Sublattice<T>) -> Result<Sublattice<T>> {
        let r = self.rank();
        let iota_inv = self.iota.inverse_unimodular()?;
        let rows = (0..r)
            .map(|i| {
                let b = self.b.basis().row(i);
                let mid_b = iota_inv.apply(&self.graph_offset(u2, b)?);
                let mid = Self::combine(&mid_b, self.b.basis());
                let off = self.graph_offset(u1, &mid)?;
                let cpart = Self::combine(&off, self.c.basis());
                Ok(b.iter().zip(cpart).map(|(x, y)| x.clone() + y).collect())
            })
            .collect::<Result<Vec<Vec<T>>>>()?;
        Sublattice::new(self.b.ambient(), rows)
    }
}

/// An integer `m` carried by `U(m) = (1 0; m 1)`, which fixes `e_2` and
/// sends `e_1` to `e_1 + m e_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EncodedInteger<T> {
    carrier: Matrix<T>,
}

impl<T: Scalar> EncodedInteger<T> {
    pub fn encode(m: T) -> Self {
        let mut carrier = Matrix::identity(2);
        carrier[(1, 0)] = m;
        EncodedInteger { carrier }
    }

    pub fn from_carrier(carrier: Matrix<T>) -> Result<Self> {
        let ok = carrier.rows() == 2
            && carrier.cols() == 2
            && carrier[(0, 0)].is_one()
            && carrier[(0, 1)].is_zero()
            && carrier[(1, 1)].is_one();
        if !ok {
            return input(format!("{carrier} is not of the form (1 0; m 1)"));
        }
        Ok(EncodedInteger { carrier })
    }

    pub fn carrier(&self) -> &Matrix<T> {
        &self.carrier
    }

    pub fn decode(&self) -> T {
        self.carrier[(1, 0)].clone()
    }

    /// `U(a) U(b) = U(a + b)`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::from_carrier(&self.carrier * &other.carrier)
    }

    /// Applies `U(a)` to `b e_1` and re-encodes the `e_2` component of the
    /// displacement `U(a)(b e_1) - b e_1`.
    pub fn mul(&self, other: &Self) -> Self {
        let v = vec![other.decode(), T::zero()];
        let moved = self.carrier.apply(&v);
        let displacement: Vec<T> = moved.into_iter().zip(v).map(|(x, y)| x - y).collect();
        debug_assert!(displacement[0].is_zero());
        Self::encode(displacement[1].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::parse_element;
    use num_bigint::BigInt;

    type E = Endomorphism<BigInt>;
    type M = Matrix<BigInt>;
    type L = Sublattice<BigInt>;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn inner_as_vectors() {
        let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
        let x1 = parse_element(&ctx, "x1").unwrap();
        let x2 = parse_element(&ctx, "x2").unwrap();
        assert_eq!(inn_to_abelian(&E::inner(&x1), &x1).unwrap(), big(&[1, 0]));
        let z = parse_element(&ctx, "[x2,x1]").unwrap();
        assert_eq!(inn_to_abelian(&E::inner(&z), &z).unwrap(), big(&[0, 0]));
        assert!(abelian_to_inn(&ctx, &big(&[0, 0])).unwrap().is_identity());
        let f = E::inner(&x1).compose(&E::inner(&x2)).unwrap();
        let x = x1.multiply(&x2).unwrap();
        assert_eq!(inn_to_abelian(&f, &x).unwrap(), big(&[1, 1]));
        assert_eq!(abelian_to_inn(&ctx, &big(&[1, 1])).unwrap(), f);
        assert!(inn_to_abelian(&f, &x1).is_err());
    }

    #[test]
    fn t_classes() {
        let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
        let mut rng = sample::trial_rng(5, 0);
        let sample = symmetry_sample(&ctx, 4, 2, &mut rng);
        let gamma = E::new(
            &ctx,
            vec![
                parse_element(&ctx, "x1 [x2,x1]").unwrap(),
                parse_element(&ctx, "x2").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(t_plus_minus_classify(&gamma, &sample).unwrap(), TClass::TMinus);
        let swap = E::lift_matrix(&ctx, &M::from_i64(&[[0, 1], [1, 0]])).unwrap();
        assert!(matches!(
            t_plus_minus_classify(&swap, &sample).unwrap(),
            TClass::Neither { .. }
        ));
        assert_eq!(
            t_plus_minus_classify(&E::identity(&ctx), &sample).unwrap(),
            TClass::Both
        );

        let ctx3 = GroupContext::<BigInt>::new(2, 3).unwrap();
        let sample3 = symmetry_sample(&ctx3, 3, 2, &mut rng);
        let gamma2 = E::new(
            &ctx3,
            vec![
                parse_element(&ctx3, "x1 [[x2,x1],x1]").unwrap(),
                parse_element(&ctx3, "x2").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(t_plus_minus_classify(&gamma2, &sample3).unwrap(), TClass::TPlus);
    }

    #[test]
    fn two_symmetry_factorization() {
        let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
        let (t1, t2) = factor_inner_as_symmetries(&ctx, 0).unwrap();
        let x1 = parse_element(&ctx, "x1").unwrap();
        let x2 = parse_element(&ctx, "x2").unwrap();
        assert_eq!(t2.apply(&x2).unwrap(), parse_element(&ctx, "x1^-1 x2^-1 x1").unwrap());
        let prod = t1.compose(&t2).unwrap();
        assert_eq!(prod.apply(&x2).unwrap(), parse_element(&ctx, "x1 x2 x1^-1").unwrap());
        assert_eq!(prod, E::inner(&x1));
        let x2x1 = x2.multiply(&x1).unwrap();
        assert_eq!(t2.apply(&x2x1).unwrap(), x2x1.invert());
        assert!(t2.is_involution());
        assert!(factor_inner_as_symmetries(&ctx, 2).is_err());
    }

    #[test]
    fn structure_sample() {
        let m = build_structure_m::<BigInt>(2, 6, 11).unwrap();
        assert!(m.verify().unwrap());
        let e1 = L::from_i64(2, &[[1, 0]]).unwrap();
        let e2 = L::from_i64(2, &[[0, 1]]).unwrap();
        let two = L::from_i64(2, &[[2, 0]]).unwrap();
        let (i1, i2) = (m.summand_index(&e1).unwrap(), m.summand_index(&e2).unwrap());
        assert!(m.complement.contains(&(i1, i2)));
        assert!(m.summand_index(&two).is_none());
        assert!(m.rejected.contains(&two));
        assert!(e1.includes(&two).unwrap());
        let d = M::from_i64(&[[1, 0], [0, -1]]);
        let a = m.automorphisms.iter().position(|x| *x == d).unwrap();
        assert!(m.involution_fixed.contains(&(a, i1)));
        assert_eq!(m, build_structure_m::<BigInt>(2, 6, 11).unwrap());
    }

    #[test]
    fn graph_encoding() {
        let frame = GraphFrame::<BigInt>::standard(2);
        let alpha = M::from_i64(&[[1, 2], [3, 4]]);
        let g = frame.encode(&alpha).unwrap();
        let expected = L::from_i64(4, &[[1, 0, 1, 3], [0, 1, 2, 4]]).unwrap();
        assert_eq!(g, expected);
        assert!(relation_r(&g, &frame.c).unwrap());
        assert_eq!(frame.decode(&g).unwrap(), alpha);
        assert_eq!(frame.encode(&M::zeros(2, 2)).unwrap(), frame.b);

        let beta = M::from_i64(&[[0, -1], [5, 2]]);
        let composed = frame.compose_graphs(&g, &frame.encode(&beta).unwrap()).unwrap();
        assert_eq!(frame.decode(&composed).unwrap(), &alpha * &beta);
    }

    #[test]
    fn graph_encoding_skew_frame() {
        let b = L::from_i64(4, &[[1, 0, 1, 0], [0, 1, 0, 0]]).unwrap();
        let c = L::from_i64(4, &[[0, 0, 1, 1], [0, 0, 0, 1]]).unwrap();
        let frame = GraphFrame::new(b, c, M::from_i64(&[[2, 1], [1, 1]])).unwrap();
        let alpha = M::from_i64(&[[-3, 2], [7, 1]]);
        let beta = M::from_i64(&[[1, 1], [0, 2]]);
        let g = frame.encode(&alpha).unwrap();
        assert_eq!(frame.decode(&g).unwrap(), alpha);
        let composed = frame.compose_graphs(&g, &frame.encode(&beta).unwrap()).unwrap();
        assert_eq!(frame.decode(&composed).unwrap(), &alpha * &beta);
        let bad = GraphFrame::new(L::full(4), L::zero(4), M::identity(2));
        assert!(bad.is_err());
    }

    #[test]
    fn integers() {
        let e = |m: i64| EncodedInteger::encode(BigInt::from(m));
        assert!(e(0).carrier().is_identity());
        assert_eq!(e(0).add(&e(7)).unwrap(), e(7));
        assert_eq!(e(2).mul(&e(3)), e(6));
        assert_eq!(e(5).mul(&e(0)), e(0));
        assert_eq!(e(-4).add(&e(9)).unwrap().decode(), BigInt::from(5));
        assert!(EncodedInteger::from_carrier(M::from_i64(&[[1, 1], [0, 1]])).is_err());
    }
}
