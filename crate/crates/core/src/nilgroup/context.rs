use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hall::{basis_label, hall_basis, HallElement, Shape};
use super::series::{nil_powers, unipotent_inverse, unipotent_power, Layout, Series};
use crate::error::{input, Result};
use crate::scalar::{convert, to_bigint, Scalar};

/// A free nilpotent group of finite rank and class, with its Hall basis and
/// the precomputed Magnus images used for normal forms.
///
/// Contexts compare equal when rank and class agree.
pub struct GroupContext<T> {
    rank: usize,
    class: usize,
    basis: Vec<HallElement>,
    pub(crate) layout: Layout,
    pub(crate) generator_series: Vec<[Series<T>; 2]>,
    /// `D^j` for the Magnus image `1 + D` of each basis element.
    pub(crate) basis_powers: Vec<Vec<Series<T>>>,
    weight_ranges: Vec<Range<usize>>,
    solvers: Vec<WeightSolver<T>>,
    lower: Option<Arc<GroupContext<T>>>,
}

/// Reads the weight-`w` coordinates off the degree-`w` part of a series that
/// vanishes in degrees `1..w`.
struct WeightSolver<T> {
    pivots: Vec<usize>,
    numer: Vec<Vec<T>>,
    denom: T,
}

impl<T: Scalar> GroupContext<T> {
    pub fn new(rank: usize, class: usize) -> Result<Arc<Self>> {
        if rank < 1 {
            return input("rank must be at least 1");
        }
        if class < 1 {
            return input("class must be at least 1");
        }
        let lower = if class > 1 {
            Some(Self::new(rank, class - 1)?)
        } else {
            None
        };
        let basis = hall_basis(rank, class);
        let layout = Layout::new(rank, class);
        let generator_series = (0..rank)
            .map(|i| {
                [
                    Series::generator(&layout, i, false),
                    Series::generator(&layout, i, true),
                ]
            })
            .collect();
        let mut magnus: Vec<Series<T>> = Vec::with_capacity(basis.len());
        for e in &basis {
            let s = match e.shape {
                Shape::Generator(i) => Series::generator(&layout, i, false),
                Shape::Bracket(l, r) => magnus_commutator(&magnus[l], &magnus[r], &layout),
            };
            magnus.push(s);
        }
        let basis_powers = magnus.iter().map(|m| nil_powers(m, &layout)).collect();
        let mut weight_ranges = Vec::with_capacity(class);
        for w in 1..=class {
            let start = basis.iter().position(|e| e.weight == w).unwrap_or(basis.len());
            let end = basis.iter().rposition(|e| e.weight == w).map_or(start, |p| p + 1);
            weight_ranges.push(start..end);
        }
        let solvers = (1..=class)
            .map(|w| WeightSolver::build(&magnus, weight_ranges[w - 1].clone(), &layout, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(GroupContext {
            rank,
            class,
            basis,
            layout,
            generator_series,
            basis_powers,
            weight_ranges,
            solvers,
            lower,
        }))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn basis(&self) -> &[HallElement] {
        &self.basis
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self, index: usize) -> String {
        basis_label(&self.basis, index)
    }

    /// Basis indices of weight `w`.
    pub fn weight_range(&self, w: usize) -> Range<usize> {
        self.weight_ranges[w - 1].clone()
    }

    /// Number of basis elements of weight at most `m`.
    pub fn prefix_len(&self, m: usize) -> usize {
        if m == 0 {
            0
        } else {
            self.weight_ranges[m.min(self.class) - 1].end
        }
    }

    /// The same-rank context of class `m <= class`.
    pub fn truncated(self: &Arc<Self>, m: usize) -> Result<Arc<Self>> {
        if m < 1 || m > self.class {
            return input(format!("class {m} outside 1..={}", self.class));
        }
        let mut ctx = self.clone();
        while ctx.class > m {
            ctx = ctx.lower.clone().expect("lower context exists above class 1");
        }
        Ok(ctx)
    }

    pub(crate) fn power_of_basis(&self, k: usize, e: &T) -> Series<T> {
        unipotent_power(&self.basis_powers[k], e, &self.layout)
    }

    pub(crate) fn series_of(&self, exps: &[T]) -> Series<T> {
        let mut acc = Series::one(&self.layout);
        for (k, e) in exps.iter().enumerate() {
            if !e.is_zero() {
                acc = acc.mul(&self.power_of_basis(k, e), &self.layout);
            }
        }
        acc
    }

    /// Mal'cev coordinates of a group-like series.
    pub(crate) fn coordinates(&self, series: Series<T>) -> Vec<T> {
        let mut cur = series;
        let mut exps = vec![T::zero(); self.basis.len()];
        for w in 1..=self.class {
            let range = self.weight_ranges[w - 1].clone();
            let solver = &self.solvers[w - 1];
            for (slot, k) in range.clone().enumerate() {
                let mut acc = T::zero();
                for (j, &p) in solver.pivots.iter().enumerate() {
                    acc.add_mul(&cur.coeffs[p], &solver.numer[j][slot]);
                }
                let (q, r) = acc.div_rem(&solver.denom);
                assert!(r.is_zero(), "Magnus coordinates are integral");
                exps[k] = q;
            }
            if w < self.class {
                for k in range {
                    if !exps[k].is_zero() {
                        let inv = self.power_of_basis(k, &-exps[k].clone());
                        cur = inv.mul(&cur, &self.layout);
                    }
                }
            }
        }
        exps
    }
}

pub(crate) fn magnus_commutator<T: Scalar>(a: &Series<T>, b: &Series<T>, layout: &Layout) -> Series<T> {
    let ai = unipotent_inverse(a, layout);
    let bi = unipotent_inverse(b, layout);
    ai.mul(&bi, layout).mul(a, layout).mul(b, layout)
}

impl<T: Scalar> WeightSolver<T> {
    fn build(magnus: &[Series<T>], range: Range<usize>, layout: &Layout, w: usize) -> Result<Self> {
        let cols = layout.degree(w);
        let rows: Vec<Vec<BigRational>> = range
            .clone()
            .map(|k| {
                magnus[k].coeffs[cols.clone()]
                    .iter()
                    .map(|c| BigRational::from_integer(to_bigint(c)))
                    .collect()
            })
            .collect();
        let count = rows.len();
        // Pivot columns from row echelon form.
        let mut ech = rows.clone();
        let mut pivots = Vec::with_capacity(count);
        let mut r = 0;
        for c in 0..cols.len() {
            if r == count {
                break;
            }
            let Some(p) = (r..count).find(|&i| !ech[i][c].is_zero()) else {
                continue;
            };
            ech.swap(r, p);
            let pivot = ech[r][c].clone();
            for i in 0..count {
                if i != r && !ech[i][c].is_zero() {
                    let f = &ech[i][c] / &pivot;
                    #[allow(clippy::needless_range_loop)]
                    for j in 0..cols.len() {
                        let t = &ech[r][j] * &f;
                        ech[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        assert_eq!(pivots.len(), count, "basic commutators are independent");
        // Invert the square pivot submatrix: e * M = v with M[k][j] = rows[k][pivots[j]].
        let n = count;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|k| pivots.iter().map(|&c| rows[k][c].clone()).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("nonsingular");
            m.swap(c, p);
            inv.swap(c, p);
            let pivot = m[c][c].clone();
            for j in 0..n {
                m[c][j] = &m[c][j] / &pivot;
                inv[c][j] = &inv[c][j] / &pivot;
            }
            for i in 0..n {
                if i != c && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..n {
                        let t = &m[c][j] * &f;
                        m[i][j] -= t;
                        let t = &inv[c][j] * &f;
                        inv[i][j] -= t;
                    }
                }
            }
        }
        // e = v * M^{-1}; v indexed by pivot, e by basis slot.
        let mut denom = BigInt::one();
        for row in &inv {
            for x in row {
                denom = num_integer::lcm(denom, x.denom().clone());
            }
        }
        let numer = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x.numer() * (&denom / x.denom());
                        convert(&v).ok_or_else(|| crate::Error::Input("solver coefficient overflows scalar".into()))
                    })
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let denom = convert(&denom).ok_or_else(|| crate::Error::Input("solver denominator overflows scalar".into()))?;
        Ok(WeightSolver {
            pivots: pivots.into_iter().map(|c| cols.start + c).collect(),
            numer,
            denom,
        })
    }
}

impl<T> PartialEq for GroupContext<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.class == other.class
    }
}

impl<T> Eq for GroupContext<T> {}

impl<T> fmt::Debug for GroupContext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupContext(rank={}, class={})", self.rank, self.class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_coordinates_are_unit_vectors() {
        for (rank, class) in [(2, 3), (3, 3), (2, 5)] {
            let ctx = GroupContext::<i64>::new(rank, class).unwrap();
            for k in 0..ctx.basis_len() {
                let mut e = vec![0i64; ctx.basis_len()];
                e[k] = 3;
                assert_eq!(ctx.coordinates(ctx.series_of(&e)), e);
            }
        }
    }

    #[test]
    fn truncation_walks_down() {
        let ctx = GroupContext::<i64>::new(3, 3).unwrap();
        let two = ctx.truncated(2).unwrap();
        assert_eq!((two.rank(), two.class()), (3, 2));
        assert_eq!(two.basis(), &ctx.basis()[..ctx.prefix_len(2)]);
        assert!(ctx.truncated(4).is_err());
        assert!(ctx.truncated(0).is_err());
    }
}
