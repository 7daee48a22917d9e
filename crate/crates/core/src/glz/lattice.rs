//! Sublattices of `Z^n`, direct summands and the structure of integral
//! involutions.

use std::fmt;

use super::normal_form::{echelon_rank, hermite_form, right_kernel, smith_normal_form, solve_in_echelon};
use super::Matrix;
use crate::error::{domain, input, Result};
use crate::scalar::Scalar;

/// A sublattice of `Z^n`, stored by its row Hermite basis so that equal
/// lattices compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice<T> {
    ambient: usize,
    basis: Matrix<T>,
}

impl<T: Scalar> Sublattice<T> {
    /// Lattice spanned by `rows`; the rows may be dependent.
    pub fn new(ambient: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient) {
            return input(format!("sublattice generators must have length {ambient}"));
        }
        if rows.is_empty() {
            return Ok(Self::zero(ambient));
        }
        Ok(Self::spanned_by(&Matrix::from_rows(rows)?))
    }

    /// Lattice spanned by the rows of `m`.
    pub fn spanned_by(m: &Matrix<T>) -> Self {
        let ambient = m.cols();
        if m.rows() == 0 {
            return Self::zero(ambient);
        }
        let (h, _) = hermite_form(m);
        let r = echelon_rank(&h);
        let basis = if r == 0 {
            Matrix::zeros(0, ambient)
        } else {
            Matrix::from_rows((0..r).map(|i| h.row(i).to_vec()).collect()).expect("rectangular")
        };
        Sublattice { ambient, basis }
    }

    pub fn from_i64<R: AsRef<[i64]>>(ambient: usize, rows: &[R]) -> Result<Self> {
        Self::new(
            ambient,
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| T::from(v)).collect())
                .collect(),
        )
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Hermite basis, one row per generator.
    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    fn check_vec(&self, v: &[T]) -> Result<()> {
        if v.len() != self.ambient {
            return input(format!("vector of length {} in Z^{}", v.len(), self.ambient));
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if other.ambient != self.ambient {
            return input(format!(
                "sublattices of Z^{} and Z^{} are not comparable",
                self.ambient, other.ambient
            ));
        }
        Ok(())
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[T]) -> Result<Option<Vec<T>>> {
        self.check_vec(v)?;
        Ok(solve_in_echelon(&self.basis, v))
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `other ⊆ self`.
    pub fn includes(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok((0..other.rank()).all(|i| solve_in_echelon(&self.basis, other.basis.row(i)).is_some()))
    }

    /// True iff every elementary divisor of the basis is 1.
    pub fn is_direct_summand(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        let (_, d, _) = smith_normal_form(&self.basis);
        (0..self.rank()).all(|i| d[(i, i)].is_one())
    }

    /// A complement `C` with `Z^n = self ⊕ C`, when one exists.
    pub fn find_complement(&self) -> Option<Self> {
        let n = self.ambient;
        let r = self.rank();
        if r == 0 {
            return Some(Self::full(n));
        }
        let (_, d, v) = smith_normal_form(&self.basis);
        if !(0..r).all(|i| d[(i, i)].is_one()) {
            return None;
        }
        // U B V = [I 0] so B spans the first r rows of V^-1
        let vinv = v.inverse_unimodular().expect("unimodular");
        let rows: Vec<Vec<T>> = (r..n).map(|i| vinv.row(i).to_vec()).collect();
        Some(Self::new(n, rows).expect("ambient"))
    }

    /// The lattice spanned by `self` and `other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.rank() == 0 {
            return Ok(other.clone());
        }
        if other.rank() == 0 {
            return Ok(self.clone());
        }
        Ok(Self::spanned_by(&self.basis.stack(&other.basis)?))
    }

    /// Image under `m` acting on column vectors.
    pub fn image(&self, m: &Matrix<T>) -> Result<Self> {
        if m.cols() != self.ambient || !m.is_square() {
            return input("matrix does not act on the ambient lattice");
        }
        let rows: Vec<Vec<T>> = (0..self.rank()).map(|i| m.apply(self.basis.row(i))).collect();
        Self::new(self.ambient, rows)
    }

    pub fn is_invariant_under(&self, m: &Matrix<T>) -> Result<bool> {
        let img = self.image(m)?;
        self.includes(&img)
    }
}

/// `Z^n = b ⊕ c`: ranks add up and the stacked bases form a unimodular matrix.
pub fn relation_r<T: Scalar>(b: &Sublattice<T>, c: &Sublattice<T>) -> Result<bool> {
    b.check_same(c)?;
    if b.rank() + c.rank() != b.ambient {
        return Ok(false);
    }
    if b.ambient == 0 {
        return Ok(true);
    }
    let stacked = if b.rank() == 0 {
        c.basis.clone()
    } else if c.rank() == 0 {
        b.basis.clone()
    } else {
        b.basis.stack(&c.basis)?
    };
    Ok(stacked.is_unimodular())
}

impl<T: fmt::Debug> fmt::Debug for Sublattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(Z^{}, {:?})", self.ambient, self.basis)
    }
}

fn check_involution<T: Scalar>(f: &Matrix<T>) -> Result<()> {
    if !f.is_square() || !(f * f).is_identity() {
        return domain(format!("{f} is not an involution"));
    }
    Ok(())
}

fn kernel_lattice<T: Scalar>(m: &Matrix<T>) -> Sublattice<T> {
    let k = right_kernel(m);
    if k.rows() == 0 {
        Sublattice::zero(m.cols())
    } else {
        Sublattice::spanned_by(&k)
    }
}

/// `{v : f v = v}`.
pub fn fixed_lattice<T: Scalar>(f: &Matrix<T>) -> Sublattice<T> {
    let n = f.rows();
    kernel_lattice(&(f - &Matrix::identity(n)))
}

/// `{v : f v = -v}`.
pub fn negated_lattice<T: Scalar>(f: &Matrix<T>) -> Sublattice<T> {
    let n = f.rows();
    kernel_lattice(&(f + &Matrix::identity(n)))
}

/// True iff `Z^n = Fix(f) ⊕ Neg(f)`.
pub fn is_diagonalizable_involution<T: Scalar>(f: &Matrix<T>) -> Result<bool> {
    check_involution(f)?;
    relation_r(&fixed_lattice(f), &negated_lattice(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `f v = v`
    Plus,
    /// `f v = -v`
    Minus,
    /// basis `(e, f e)`, on which `f` is the swap
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block<T> {
    pub kind: BlockKind,
    pub vectors: Vec<Vec<T>>,
}

/// Decomposes an involution of `Z^n` into rank-one `±1` blocks and rank-two
/// swap blocks whose vectors together form a basis of `Z^n`.
///
/// Blocks come in the order: pairs, then fixed vectors, then negated vectors.
pub fn involution_blocks<T: Scalar>(f: &Matrix<T>) -> Result<Vec<Block<T>>> {
    check_involution(f)?;
    let n = f.rows();
    let fix = fixed_lattice(f);
    let comp = fix.find_complement().expect("a kernel lattice is saturated");
    let (a, b) = (fix.rank(), comp.rank());
    let u = fix.basis().clone();

    let mut pairs = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    if a == 0 || b == 0 {
        plus.extend((0..a).map(|i| u.row(i).to_vec()));
        minus.extend((0..b).map(|i| comp.basis().row(i).to_vec()));
    } else {
        let e = comp.basis().clone();
        // column j: coordinates of e_j + f e_j in the basis u
        let mut c = Matrix::zeros(a, b);
        for j in 0..b {
            let ej = e.row(j);
            let s: Vec<T> = f.apply(ej).into_iter().zip(ej).map(|(x, y)| x + y.clone()).collect();
            let coords = solve_in_echelon(&u, &s).expect("e + f e is fixed");
            for (i, v) in coords.into_iter().enumerate() {
                c[(i, j)] = v;
            }
        }
        let (p, d, q) = smith_normal_form(&c);
        let u2 = &p.inverse_unimodular()?.transpose() * &u;
        let e2 = &q.transpose() * &e;
        let two = T::from(2);
        for j in 0..b {
            let mut ej = e2.row(j).to_vec();
            let dj = if j < a { d[(j, j)].clone() } else { T::zero() };
            if j < a && !dj.is_zero() {
                let k = dj.div_floor(&two);
                for (x, y) in ej.iter_mut().zip(u2.row(j)) {
                    *x -= y.mul_ref(&k);
                }
            }
            if dj.is_odd() {
                let fe = f.apply(&ej);
                pairs.push(Block {
                    kind: BlockKind::Pair,
                    vectors: vec![ej, fe],
                });
            } else {
                minus.push(ej);
            }
        }
        for i in 0..a {
            let odd = i < b && d[(i, i)].is_odd();
            if !odd {
                plus.push(u2.row(i).to_vec());
            }
        }
    }
    let mut blocks = pairs;
    blocks.extend(plus.into_iter().map(|v| Block {
        kind: BlockKind::Plus,
        vectors: vec![v],
    }));
    blocks.extend(minus.into_iter().map(|v| Block {
        kind: BlockKind::Minus,
        vectors: vec![v],
    }));
    debug_assert_eq!(blocks.iter().map(|b| b.vectors.len()).sum::<usize>(), n);
    Ok(blocks)
}

/// An `f`-invariant decomposition `Z^n = B ⊕ C` with `rank B = 2` and `f|B`
/// a non-central involution.
#[derive(Clone, Debug)]
pub struct Splitting<T> {
    pub b: Sublattice<T>,
    pub c: Sublattice<T>,
    /// Columns: the chosen basis of `B` followed by a basis of `C`.
    pub adapted_basis: Matrix<T>,
    /// `f|B` in the chosen basis of `B`.
    pub restriction: Matrix<T>,
    /// `f|C` in the chosen basis of `C`.
    pub complement_restriction: Matrix<T>,
}

pub fn invariant_splitting<T: Scalar>(f: &Matrix<T>) -> Result<Splitting<T>> {
    let blocks = involution_blocks(f)?;
    let n = f.rows();
    let pos = |k: BlockKind| blocks.iter().position(|b| b.kind == k);
    let chosen: Vec<usize> = match (pos(BlockKind::Pair), pos(BlockKind::Plus), pos(BlockKind::Minus)) {
        (Some(p), _, _) => vec![p],
        (None, Some(p), Some(m)) => vec![p, m],
        _ => return domain("the involution is central; no non-central rank-2 block exists"),
    };
    let mut b_vecs = Vec::new();
    for &i in &chosen {
        b_vecs.extend(blocks[i].vectors.iter().cloned());
    }
    let mut c_vecs = Vec::new();
    for (i, blk) in blocks.iter().enumerate() {
        if !chosen.contains(&i) {
            c_vecs.extend(blk.vectors.iter().cloned());
        }
    }
    let mut cols = b_vecs.clone();
    cols.extend(c_vecs.iter().cloned());
    let w = Matrix::from_columns(&cols)?;
    let winv = w.inverse_unimodular()?;
    let local = &(&winv * f) * &w;
    let sub = |r0: usize, r1: usize| {
        let rows: Vec<Vec<T>> = (r0..r1).map(|i| local.row(i)[r0..r1].to_vec()).collect();
        if rows.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows).expect("rectangular")
        }
    };
    Ok(Splitting {
        b: Sublattice::new(n, b_vecs)?,
        c: Sublattice::new(n, c_vecs)?,
        restriction: sub(0, 2),
        complement_restriction: sub(2, n),
        adapted_basis: w,
    })
}
