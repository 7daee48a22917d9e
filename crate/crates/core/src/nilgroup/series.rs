//! Truncated non-commutative power series `T<X_1..X_n> / (degree > s)`.
//!
//! The Magnus map `x_i -> 1 + X_i` embeds the free nilpotent group of class
//! `s` into the unit group of this ring, so group arithmetic reduces to
//! polynomial arithmetic with exact coefficients.

use std::ops::Range;

use crate::scalar::Ring;

/// Dense coefficient layout: degree `d` words over `rank` letters occupy
/// `offset(d) .. offset(d) + rank^d`, a word `l_1..l_d` at
/// `offset(d) + sum l_i * rank^(d-i)`.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub rank: usize,
    pub class: usize,
    offsets: Vec<usize>,
    powers: Vec<usize>,
}

impl Layout {
    pub fn new(rank: usize, class: usize) -> Self {
        let mut powers = Vec::with_capacity(class + 1);
        let mut offsets = Vec::with_capacity(class + 2);
        let mut p = 1;
        let mut off = 0;
        for _ in 0..=class {
            powers.push(p);
            offsets.push(off);
            off += p;
            p *= rank;
        }
        offsets.push(off);
        Layout {
            rank,
            class,
            offsets,
            powers,
        }
    }

    pub fn len(&self) -> usize {
        self.offsets[self.class + 1]
    }

    pub fn degree(&self, d: usize) -> Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    /// Index of the word `X_i^d`.
    fn letter_power(&self, i: usize, d: usize) -> usize {
        let mut idx = 0;
        for _ in 0..d {
            idx = idx * self.rank + i;
        }
        self.offsets[d] + idx
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Series<T> {
    pub coeffs: Vec<T>,
}

impl<T: Ring> Series<T> {
    pub fn zero(layout: &Layout) -> Self {
        Series {
            coeffs: vec![T::zero(); layout.len()],
        }
    }

    pub fn one(layout: &Layout) -> Self {
        let mut s = Self::zero(layout);
        s.coeffs[0] = T::one();
        s
    }

    /// `1 + X_i` or its inverse `sum_d (-X_i)^d`.
    pub fn generator(layout: &Layout, i: usize, inverse: bool) -> Self {
        let mut s = Self::one(layout);
        if inverse {
            for d in 1..=layout.class {
                let sign = if d % 2 == 1 { -T::one() } else { T::one() };
                s.coeffs[layout.letter_power(i, d)] = sign;
            }
        } else if layout.class >= 1 {
            s.coeffs[layout.letter_power(i, 1)] = T::one();
        }
        s
    }

    pub fn mul(&self, other: &Self, layout: &Layout) -> Self {
        let mut out = Self::zero(layout);
        let s = layout.class;
        for du in 0..=s {
            let ru = layout.degree(du);
            for (iu, a) in self.coeffs[ru].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for dv in 0..=(s - du) {
                    let width = layout.powers[dv];
                    let base = layout.offsets[du + dv] + iu * width;
                    let rv = layout.degree(dv);
                    for (iv, b) in other.coeffs[rv].iter().enumerate() {
                        if !b.is_zero() {
                            out.coeffs[base + iv].add_mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// The series minus its constant term.
    pub fn nil_part(&self) -> Self {
        let mut d = self.clone();
        d.coeffs[0] = T::zero();
        d
    }

    pub fn add_scaled(&mut self, other: &Self, k: &T) {
        if k.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_mul(b, k);
        }
    }

    #[cfg(test)]
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

/// Powers `D, D^2, .., D^s` of the nilpotent part `D = p - 1` of a unipotent
/// series. Powers beyond the class vanish.
pub(crate) fn nil_powers<T: Ring>(p: &Series<T>, layout: &Layout) -> Vec<Series<T>> {
    let d = p.nil_part();
    let mut out = Vec::with_capacity(layout.class);
    if layout.class == 0 {
        return out;
    }
    out.push(d.clone());
    for _ in 1..layout.class {
        let next = out.last().unwrap().mul(&d, layout);
        if next.coeffs.iter().all(|c| c.is_zero()) {
            break;
        }
        out.push(next);
    }
    out
}

/// `(1 + D)^e = sum_j binom(e, j) D^j`, valid for every integer `e`.
pub(crate) fn unipotent_power<T: crate::Scalar>(powers: &[Series<T>], e: &T, layout: &Layout) -> Series<T> {
    let mut out = Series::one(layout);
    if e.is_zero() {
        return out;
    }
    let mut binom = T::one();
    for (j, dj) in powers.iter().enumerate() {
        // binom(e, j+1) = binom(e, j) * (e - j) / (j + 1)
        let jj = T::from(j as i64);
        binom = binom * (e.clone() - jj) / T::from(j as i64 + 1);
        if binom.is_zero() {
            break;
        }
        out.add_scaled(dj, &binom);
    }
    out
}

/// Inverse of a unipotent series: `sum_j (-D)^j`.
pub(crate) fn unipotent_inverse<T: crate::Scalar>(p: &Series<T>, layout: &Layout) -> Series<T> {
    let powers = nil_powers(p, layout);
    unipotent_power(&powers, &-T::one(), layout)
}
