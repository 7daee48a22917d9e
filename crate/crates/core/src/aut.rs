//! Endomorphisms and automorphisms of free nilpotent groups.
//!
//! An endomorphism is the tuple of generator images. Composition is
//! `(f ∘ g)(x) = f(g(x))` and conjugation by `x` is `g ↦ x g x^{-1}`.
//! `K_m` denotes the kernel of `Aut N → Aut(N / N_{m+1})`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{domain, input, Result};
use crate::glz::Matrix;
use crate::nilgroup::hall::Shape;
use crate::nilgroup::series::{nil_powers, unipotent_power, Series};
use crate::nilgroup::{GroupContext, GroupElement};
use crate::scalar::Scalar;

#[derive(Clone)]
pub struct Endomorphism<T> {
    ctx: Arc<GroupContext<T>>,
    images: Vec<GroupElement<T>>,
    // nil powers of the Magnus images of f(b_k), one list per basis element
    cache: OnceLock<Arc<Vec<Vec<Series<T>>>>>,
}

/// Induced map on the abelianization together with its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCertificate<T> {
    pub abelianized: Matrix<T>,
    pub det: T,
}

impl<T: Scalar> Endomorphism<T> {
    pub fn new(ctx: &Arc<GroupContext<T>>, images: Vec<GroupElement<T>>) -> Result<Self> {
        if images.len() != ctx.rank() {
            return input(format!(
                "expected {} generator images, got {}",
                ctx.rank(),
                images.len()
            ));
        }
        if images.iter().any(|g| **g.context() != **ctx) {
            return input("generator image lives in a different group");
        }
        Ok(Self::from_images_unchecked(ctx, images))
    }

    fn from_images_unchecked(ctx: &Arc<GroupContext<T>>, images: Vec<GroupElement<T>>) -> Self {
        Endomorphism {
            ctx: ctx.clone(),
            images,
            cache: OnceLock::new(),
        }
    }

    pub fn identity(ctx: &Arc<GroupContext<T>>) -> Self {
        let images = (0..ctx.rank())
            .map(|i| GroupElement::generator(ctx, i).expect("in range"))
            .collect();
        Self::from_images_unchecked(ctx, images)
    }

    /// `x_i ↦ x_i^{-1}` for every generator.
    pub fn canonical_symmetry(ctx: &Arc<GroupContext<T>>) -> Self {
        let images = (0..ctx.rank())
            .map(|i| GroupElement::generator(ctx, i).expect("in range").invert())
            .collect();
        Self::from_images_unchecked(ctx, images)
    }

    /// Conjugation `g ↦ x g x^{-1}`.
    pub fn inner(x: &GroupElement<T>) -> Self {
        let ctx = x.context();
        let images = (0..ctx.rank())
            .map(|i| {
                GroupElement::generator(ctx, i)
                    .expect("in range")
                    .conjugate_by(x)
                    .expect("same group")
            })
            .collect();
        Self::from_images_unchecked(ctx, images)
    }

    /// `x_j ↦ x_1^{M_1j} ⋯ x_n^{M_nj}`.
    pub fn lift_matrix(ctx: &Arc<GroupContext<T>>, m: &Matrix<T>) -> Result<Self> {
        let n = ctx.rank();
        if m.rows() != n || m.cols() != n {
            return input(format!("expected a {n}x{n} matrix"));
        }
        if !m.is_unimodular() {
            return domain(format!("{m} has determinant {}, not ±1", m.det()));
        }
        let images = (0..n)
            .map(|j| {
                let mut g = GroupElement::identity(ctx);
                for i in 0..n {
                    if !m[(i, j)].is_zero() {
                        g = g.mul_unchecked(&GroupElement::basis_power(ctx, i, m[(i, j)].clone()));
                    }
                }
                g
            })
            .collect();
        Ok(Self::from_images_unchecked(ctx, images))
    }

    pub fn context(&self) -> &Arc<GroupContext<T>> {
        &self.ctx
    }

    pub fn images(&self) -> &[GroupElement<T>] {
        &self.images
    }

    fn check_same_ctx(&self, ctx: &GroupContext<T>) -> Result<()> {
        if *self.ctx != *ctx {
            return input(format!("endomorphism of {:?} applied in {:?}", self.ctx, ctx));
        }
        Ok(())
    }

    fn basis_image_powers(&self) -> &Arc<Vec<Vec<Series<T>>>> {
        self.cache.get_or_init(|| {
            let ctx = &self.ctx;
            let layout = &ctx.layout;
            let mut series: Vec<Series<T>> = Vec::with_capacity(ctx.basis_len());
            for b in ctx.basis() {
                let s = match b.shape {
                    Shape::Generator(i) => ctx.series_of(self.images[i].exponents()),
                    Shape::Bracket(l, r) => crate::nilgroup::magnus_commutator(&series[l], &series[r], layout),
                };
                series.push(s);
            }
            Arc::new(series.iter().map(|s| nil_powers(s, layout)).collect())
        })
    }

    pub fn apply(&self, g: &GroupElement<T>) -> Result<GroupElement<T>> {
        self.check_same_ctx(g.context())?;
        Ok(self.apply_unchecked(g))
    }

    pub(crate) fn apply_unchecked(&self, g: &GroupElement<T>) -> GroupElement<T> {
        if g.is_identity() {
            return g.clone();
        }
        let ctx = &self.ctx;
        let powers = self.basis_image_powers();
        let mut acc = Series::one(&ctx.layout);
        for (k, e) in g.exponents().iter().enumerate() {
            if !e.is_zero() {
                acc = acc.mul(&unipotent_power(&powers[k], e, &ctx.layout), &ctx.layout);
            }
        }
        GroupElement::from_exponents_unchecked(ctx, ctx.coordinates(acc))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_ctx(&other.ctx)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        if other.is_identity() {
            return self.clone();
        }
        if self.is_identity() {
            return other.clone();
        }
        let images = other.images.iter().map(|g| self.apply_unchecked(g)).collect();
        Self::from_images_unchecked(&self.ctx, images)
    }

    /// Column `j` is the abelianized image of `x_j`.
    pub fn abelianization_matrix(&self) -> Matrix<T> {
        let cols: Vec<Vec<T>> = self.images.iter().map(|g| g.abelianized()).collect();
        Matrix::from_columns(&cols).expect("square")
    }

    /// Certificate when the abelianization is unimodular. An endomorphism
    /// of a finitely generated free nilpotent group is invertible exactly
    /// then.
    pub fn is_automorphism(&self) -> Option<AutomorphismCertificate<T>> {
        let abelianized = self.abelianization_matrix();
        let det = abelianized.det();
        (det.is_one() || (-det.clone()).is_one()).then_some(AutomorphismCertificate { abelianized, det })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, g)| {
            g.exponents()
                .iter()
                .enumerate()
                .all(|(k, e)| if k == i { e.is_one() } else { e.is_zero() })
        })
    }

    pub fn is_involution(&self) -> bool {
        self.compose_unchecked(self).is_identity()
    }

    /// Inverse, built by lifting the inverse abelianization and then
    /// removing the IA discrepancy one filtration layer at a time.
    pub fn inverse(&self) -> Result<Self> {
        let Some(cert) = self.is_automorphism() else {
            return domain("endomorphism is not invertible: abelianization is not unimodular");
        };
        let minv = cert.abelianized.inverse_unimodular()?;
        let lifted = Self::lift_matrix(&self.ctx, &minv)?;
        let mut residual = self.compose_unchecked(&lifted);
        let mut correction = Self::identity(&self.ctx);
        // each round moves the residual from K_m into K_{m+1}; K_s is trivial
        let rounds = self.ctx.class().saturating_sub(1);
        for round in 0..rounds {
            if residual.is_identity() {
                break;
            }
            // residual(x_i) = x_i u_i; c(x_i) = x_i u_i^{-1} cancels its leading layer
            let images = residual
                .images
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let x = GroupElement::generator(&self.ctx, i).expect("in range");
                    let u = x.invert().mul_unchecked(r);
                    x.mul_unchecked(&u.invert())
                })
                .collect();
            let c = Self::from_images_unchecked(&self.ctx, images);
            if round + 1 < rounds {
                residual = residual.compose_unchecked(&c);
            }
            correction = correction.compose_unchecked(&c);
        }
        Ok(lifted.compose_unchecked(&correction))
    }

    /// Largest `d` with `self ∈ K_d`: `0` if not IA, `s + 1` for the identity.
    pub fn k_depth(&self) -> usize {
        let s = self.ctx.class();
        let mut depth = s + 1;
        for (i, g) in self.images.iter().enumerate() {
            let x = GroupElement::generator(&self.ctx, i).expect("in range");
            let w = x.invert().mul_unchecked(g).weight();
            if w <= s {
                depth = depth.min(w - 1);
            }
        }
        depth
    }

    /// Membership in `K_m`, `1 <= m <= s`.
    pub fn in_k(&self, m: usize) -> Result<bool> {
        if m < 1 || m > self.ctx.class() {
            return input(format!("K_{m} requested; m must lie in 1..={}", self.ctx.class()));
        }
        Ok(self.k_depth() >= m)
    }

    /// The induced endomorphism of `N / N_{m+1}`.
    pub fn project_to_class(&self, m: usize) -> Result<Self> {
        let ctx = self.ctx.truncated(m)?;
        let images = self
            .images
            .iter()
            .map(|g| g.project_to_class(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_images_unchecked(&ctx, images))
    }

    /// The induced automorphism of the class `s - 1` quotient.
    pub fn reduce_class(&self) -> Result<Self> {
        if self.ctx.class() < 2 {
            return domain("class 1 has no lower quotient");
        }
        self.project_to_class(self.ctx.class() - 1)
    }

    /// `by ∘ self ∘ by^{-1}`.
    pub fn conjugate(&self, by: &Self) -> Result<Self> {
        let inv = by.inverse()?;
        self.conjugate_with(by, &inv)
    }

    pub fn conjugate_with(&self, by: &Self, by_inverse: &Self) -> Result<Self> {
        self.check_same_ctx(&by.ctx)?;
        self.check_same_ctx(&by_inverse.ctx)?;
        Ok(by.compose_unchecked(&self.compose_unchecked(by_inverse)))
    }

    /// The symmetry inverting the basis `b(x_1), .., b(x_n)`: `b ∘ θ ∘ b^{-1}`.
    pub fn symmetry_from_automorphism(b: &Self) -> Result<Self> {
        Self::canonical_symmetry(&b.ctx).conjugate(b)
    }
}

impl<T: Scalar> PartialEq for Endomorphism<T> {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.images == other.images
    }
}

impl<T: Scalar> Eq for Endomorphism<T> {}

impl<T: Scalar> fmt::Debug for Endomorphism<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> fmt::Display for Endomorphism<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", i + 1, g)?;
        }
        write!(f, "}}")
    }
}
