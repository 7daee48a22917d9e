use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::context::{magnus_commutator, GroupContext};
use super::series::{nil_powers, unipotent_inverse, unipotent_power};
use crate::error::{input, Result};
use crate::scalar::Scalar;

/// An element of a free nilpotent group in Mal'cev normal form
/// `prod_k b_k^{e_k}` over the Hall basis, in basis order.
#[derive(Clone)]
pub struct GroupElement<T> {
    ctx: Arc<GroupContext<T>>,
    exps: Vec<T>,
}

impl<T: Scalar> GroupElement<T> {
    pub fn identity(ctx: &Arc<GroupContext<T>>) -> Self {
        GroupElement {
            ctx: ctx.clone(),
            exps: vec![T::zero(); ctx.basis_len()],
        }
    }

    /// Generator `x_{i+1}` (0-based index).
    pub fn generator(ctx: &Arc<GroupContext<T>>, i: usize) -> Result<Self> {
        if i >= ctx.rank() {
            return input(format!("generator index {} out of range 1..={}", i + 1, ctx.rank()));
        }
        Ok(Self::basis_power(ctx, i, T::one()))
    }

    pub(crate) fn basis_power(ctx: &Arc<GroupContext<T>>, k: usize, e: T) -> Self {
        let mut exps = vec![T::zero(); ctx.basis_len()];
        exps[k] = e;
        GroupElement { ctx: ctx.clone(), exps }
    }

    pub fn from_exponents(ctx: &Arc<GroupContext<T>>, exps: Vec<T>) -> Result<Self> {
        if exps.len() != ctx.basis_len() {
            return input(format!("expected {} exponents, got {}", ctx.basis_len(), exps.len()));
        }
        Ok(GroupElement { ctx: ctx.clone(), exps })
    }

    pub(crate) fn from_exponents_unchecked(ctx: &Arc<GroupContext<T>>, exps: Vec<T>) -> Self {
        debug_assert_eq!(exps.len(), ctx.basis_len());
        GroupElement { ctx: ctx.clone(), exps }
    }

    pub fn context(&self) -> &Arc<GroupContext<T>> {
        &self.ctx
    }

    pub fn exponents(&self) -> &[T] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<T> {
        self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if *self.ctx != *other.ctx {
            return input(format!("context mismatch: {:?} vs {:?}", self.ctx, other.ctx));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        let l = &self.ctx.layout;
        let s = self.ctx.series_of(&self.exps).mul(&other.ctx.series_of(&other.exps), l);
        Self::from_exponents_unchecked(&self.ctx, self.ctx.coordinates(s))
    }

    pub fn invert(&self) -> Self {
        if self.is_identity() {
            return self.clone();
        }
        let ctx = &self.ctx;
        let mut acc = super::series::Series::one(&ctx.layout);
        for (k, e) in self.exps.iter().enumerate().rev() {
            if !e.is_zero() {
                acc = acc.mul(&ctx.power_of_basis(k, &-e.clone()), &ctx.layout);
            }
        }
        Self::from_exponents_unchecked(ctx, ctx.coordinates(acc))
    }

    /// `g^{-1} h^{-1} g h`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.commutator_unchecked(other))
    }

    pub(crate) fn commutator_unchecked(&self, other: &Self) -> Self {
        let ctx = &self.ctx;
        let a = ctx.series_of(&self.exps);
        let b = ctx.series_of(&other.exps);
        Self::from_exponents_unchecked(ctx, ctx.coordinates(magnus_commutator(&a, &b, &ctx.layout)))
    }

    /// `x g x^{-1}`.
    pub fn conjugate_by(&self, x: &Self) -> Result<Self> {
        self.check_same(x)?;
        let ctx = &self.ctx;
        let l = &ctx.layout;
        let xs = ctx.series_of(&x.exps);
        let s = xs.mul(&ctx.series_of(&self.exps), l).mul(&unipotent_inverse(&xs, l), l);
        Ok(Self::from_exponents_unchecked(ctx, ctx.coordinates(s)))
    }

    pub fn power(&self, k: &T) -> Self {
        let ctx = &self.ctx;
        let powers = nil_powers(&ctx.series_of(&self.exps), &ctx.layout);
        let s = unipotent_power(&powers, k, &ctx.layout);
        Self::from_exponents_unchecked(ctx, ctx.coordinates(s))
    }

    /// Largest `m <= s` with `self` in `N_m`; `s + 1` for the identity.
    pub fn weight(&self) -> usize {
        self.exps
            .iter()
            .position(|e| !e.is_zero())
            .map_or(self.ctx.class() + 1, |k| self.ctx.basis()[k].weight)
    }

    /// Image in `N / N_{m+1}`, the free nilpotent group of class `m`.
    pub fn project_to_class(&self, m: usize) -> Result<Self> {
        let target = self.ctx.truncated(m)?;
        let len = target.basis_len();
        Ok(GroupElement {
            ctx: target,
            exps: self.exps[..len].to_vec(),
        })
    }

    /// Abelianized image: the weight-one exponents.
    pub fn abelianized(&self) -> Vec<T> {
        self.exps[..self.ctx.rank()].to_vec()
    }
}

impl<T: Scalar> PartialEq for GroupElement<T> {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.exps == other.exps
    }
}

impl<T: Scalar> Eq for GroupElement<T> {}

impl<T: Scalar> Hash for GroupElement<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.rank().hash(state);
        self.ctx.class().hash(state);
        self.exps.hash(state);
    }
}

impl<T: Scalar> fmt::Debug for GroupElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<T: Scalar> fmt::Display for GroupElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, e) in self.exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(&self.ctx.label(k))?;
            if !e.is_one() {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
