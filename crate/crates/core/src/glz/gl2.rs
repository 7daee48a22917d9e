//! `GL(2, Z)`: torsion, involution classes, the `X(m)` / `Y(m)` products and
//! walks that avoid the center.

use super::lattice::{fixed_lattice, negated_lattice};
use super::Matrix;
use crate::error::{domain, Error, Result};
use crate::sample;
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    Infinite,
}

fn is_unit_det<R: Ring>(m: &Matrix<R>) -> bool {
    let d = m.det2();
    d == R::one() || d == -R::one()
}

fn check_gl2<R: Ring>(m: &Matrix<R>) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 || !is_unit_det(m) {
        return domain(format!("{m:?} is not in GL(2)"));
    }
    Ok(())
}

/// Multiplicative order. Finite orders in `GL(2, Z)` divide 4 or 6, so 12
/// powers decide.
pub fn element_order<T: Scalar>(m: &Matrix<T>) -> Result<Order> {
    check_gl2(m)?;
    let mut p = m.clone();
    for k in 1..=12 {
        if p.is_identity() {
            return Ok(Order::Finite(k));
        }
        p = &p * m;
    }
    Ok(Order::Infinite)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionClass {
    PlusIdentity,
    MinusIdentity,
    /// conjugate to `diag(1, -1)`
    Diagonal,
    /// conjugate to `(0 1; 1 0)`
    Swap,
}

impl InvolutionClass {
    pub fn representative<T: Ring>(self) -> Matrix<T> {
        let rows: [[i64; 2]; 2] = match self {
            InvolutionClass::PlusIdentity => [[1, 0], [0, 1]],
            InvolutionClass::MinusIdentity => [[-1, 0], [0, -1]],
            InvolutionClass::Diagonal => [[1, 0], [0, -1]],
            InvolutionClass::Swap => [[0, 1], [1, 0]],
        };
        Matrix::from_i64(&rows)
    }

    pub fn name(self) -> &'static str {
        match self {
            InvolutionClass::PlusIdentity => "plus-identity",
            InvolutionClass::MinusIdentity => "minus-identity",
            InvolutionClass::Diagonal => "diagonal",
            InvolutionClass::Swap => "swap",
        }
    }
}

/// Class of a 2×2 involution together with `P` such that
/// `P * representative * P^-1 = m`.
pub fn classify_involution2<T: Scalar>(m: &Matrix<T>) -> Result<(InvolutionClass, Matrix<T>)> {
    if m.rows() != 2 || m.cols() != 2 || !(m * m).is_identity() {
        return domain(format!("{m} is not a 2x2 involution"));
    }
    if m.is_identity() {
        return Ok((InvolutionClass::PlusIdentity, Matrix::identity(2)));
    }
    if (-m).is_identity() {
        return Ok((InvolutionClass::MinusIdentity, Matrix::identity(2)));
    }
    let u = fixed_lattice(m).basis().row(0).to_vec();
    let v = negated_lattice(m).basis().row(0).to_vec();
    let uv = Matrix::from_columns(&[u.clone(), v.clone()])?;
    let d = uv.det2().abs();
    if d.is_one() {
        return Ok((InvolutionClass::Diagonal, uv));
    }
    debug_assert_eq!(d, T::from(2));
    let two = T::from(2);
    let w: Vec<T> = u
        .iter()
        .zip(&v)
        .map(|(a, b)| (a.clone() + b.clone()) / two.clone())
        .collect();
    let mw = m.apply(&w);
    Ok((InvolutionClass::Swap, Matrix::from_columns(&[w, mw])?))
}

/// Which product is formed: `X(m) = F S F S` or `Y(m) = F S F S^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    X,
    Y,
}

/// Involution family: `Even` is `(1 0; 2m -1)` (diagonal class), `Odd` is
/// `(1 0; 2m-1 -1)` (swap class).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn class(self) -> InvolutionClass {
        match self {
            Parity::Even => InvolutionClass::Diagonal,
            Parity::Odd => InvolutionClass::Swap,
        }
    }
}

/// `Lower` places the off-diagonal entry below the diagonal as written
/// above; `Upper` is the transposed family, which lies in the same class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Lower,
    Upper,
}

/// The member of an involution family with parameter `m`.
pub fn family_involution<R: Ring>(m: i64, parity: Parity, orientation: Orientation) -> Matrix<R> {
    let k = match parity {
        Parity::Even => 2 * m,
        Parity::Odd => 2 * m - 1,
    };
    match orientation {
        Orientation::Lower => Matrix::from_i64(&[[1, 0], [k, -1]]),
        Orientation::Upper => Matrix::from_i64(&[[1, k], [0, -1]]),
    }
}

pub fn xy_matrix<R: Ring>(s: &Matrix<R>, m: i64, mode: Mode, parity: Parity) -> Result<Matrix<R>> {
    xy_matrix_oriented(s, m, mode, parity, Orientation::Lower)
}

pub fn xy_matrix_oriented<R: Ring>(
    s: &Matrix<R>,
    m: i64,
    mode: Mode,
    parity: Parity,
    orientation: Orientation,
) -> Result<Matrix<R>> {
    check_gl2(s)?;
    let f = family_involution(m, parity, orientation);
    let last = match mode {
        Mode::X => s.clone(),
        Mode::Y => s.inverse2_unimodular()?,
    };
    Ok(&(&(&f * s) * &f) * &last)
}

/// Default bound on `|m|` when searching the involution families.
pub const DEFAULT_M_BOUND: i64 = 5;

/// `0, 1, -1, 2, -2, .., bound, -bound`.
pub fn search_order(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

pub fn noncentral_successor<R: Ring>(s: &Matrix<R>, mode: Mode, parity: Parity) -> Result<(i64, Matrix<R>)> {
    noncentral_successor_within(s, mode, parity, Orientation::Lower, DEFAULT_M_BOUND)
}

/// Smallest `|m| <= bound` (positive first) whose product is non-central.
pub fn noncentral_successor_within<R: Ring>(
    s: &Matrix<R>,
    mode: Mode,
    parity: Parity,
    orientation: Orientation,
    bound: i64,
) -> Result<(i64, Matrix<R>)> {
    check_gl2(s)?;
    if s.is_central2() {
        return domain(format!("{s:?} is central"));
    }
    for m in search_order(bound) {
        let t = xy_matrix_oriented(s, m, mode, parity, orientation)?;
        if !t.is_central2() {
            return Ok((m, t));
        }
    }
    Err(Error::Search(format!(
        "no m in [-{bound},{bound}] makes the {mode:?} product of {s:?} non-central ({parity:?}, {orientation:?})"
    )))
}

/// Finite differences of the four entries (row-major) of the `mode` product
/// over `m = 0, 1, 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityProfile<T> {
    pub first: [T; 4],
    pub second: [T; 4],
    /// entries with zero second and nonzero first difference
    pub linear_entries: Vec<usize>,
}

impl<T> LinearityProfile<T> {
    /// The first linear entry, if any.
    pub fn tracked(&self) -> Option<usize> {
        self.linear_entries.first().copied()
    }
}

pub fn linearity_profile<T: Scalar>(s: &Matrix<T>, mode: Mode, parity: Parity) -> Result<LinearityProfile<T>> {
    let v: Vec<Matrix<T>> = (0..3).map(|m| xy_matrix(s, m, mode, parity)).collect::<Result<_>>()?;
    let entry = |k: usize, i: usize| v[k][(i / 2, i % 2)].clone();
    let first: [T; 4] = std::array::from_fn(|i| entry(1, i) - entry(0, i));
    let second: [T; 4] = std::array::from_fn(|i| entry(2, i) - entry(1, i) * T::from(2) + entry(0, i));
    let linear_entries = (0..4).filter(|&i| second[i].is_zero() && !first[i].is_zero()).collect();
    Ok(LinearityProfile {
        first,
        second,
        linear_entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep<R> {
    pub mode: Mode,
    pub parity: Parity,
    pub orientation: Orientation,
    pub m: i64,
    pub involution: Matrix<R>,
    pub term: Matrix<R>,
}

/// Mode used at step `t` of the recursion: `Y` (inverse last factor) when
/// `t` is even, `X` when odd.
pub fn step_mode(t: usize) -> Mode {
    if t.is_multiple_of(2) {
        Mode::Y
    } else {
        Mode::X
    }
}

/// `steps` successive terms `S_{t+1} = F_t S_t F_t S_t^{±1}`, each chosen
/// non-central. When the lower family cannot avoid the center the
/// transposed family is used; the choice is recorded per step.
pub fn noncentral_sigma_walk<R: Ring>(s0: &Matrix<R>, steps: usize, parity: Parity) -> Result<Vec<WalkStep<R>>> {
    noncentral_sigma_walk_within(s0, steps, parity, DEFAULT_M_BOUND)
}

pub fn noncentral_sigma_walk_within<R: Ring>(
    s0: &Matrix<R>,
    steps: usize,
    parity: Parity,
    bound: i64,
) -> Result<Vec<WalkStep<R>>> {
    check_gl2(s0)?;
    if s0.is_central2() {
        return domain(format!("{s0:?} is central"));
    }
    let mut out: Vec<WalkStep<R>> = Vec::with_capacity(steps);
    let mut cur = s0.clone();
    for t in 0..steps {
        let mode = step_mode(t);
        let (orientation, (m, term)) = match noncentral_successor_within(&cur, mode, parity, Orientation::Lower, bound)
        {
            Ok(r) => (Orientation::Lower, r),
            Err(Error::Search(_)) => (
                Orientation::Upper,
                noncentral_successor_within(&cur, mode, parity, Orientation::Upper, bound)?,
            ),
            Err(e) => return Err(e),
        };
        out.push(WalkStep {
            mode,
            parity,
            orientation,
            m,
            involution: family_involution(m, parity, orientation),
            term: term.clone(),
        });
        cur = term;
    }
    Ok(out)
}

fn entry_size<T: Scalar>(m: &Matrix<T>) -> T {
    (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .fold(T::zero(), |acc, (i, j)| acc + m[(i, j)].abs())
}

/// Conjugates `f` by elementary matrices `I ± E_12`, `I ± E_21` while that
/// lowers the sum of absolute entries.
pub fn reduce_by_conjugation<T: Scalar>(f: &Matrix<T>) -> Result<Matrix<T>> {
    check_gl2(f)?;
    let steps: Vec<Matrix<T>> = [[[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [1, 1]], [[1, 0], [-1, 1]]]
        .iter()
        .map(|r| Matrix::from_i64(r))
        .collect();
    let mut cur = f.clone();
    let mut size = entry_size(&cur);
    loop {
        let best = steps
            .iter()
            .map(|e| {
                let c = &(e * &cur) * &e.inverse2_unimodular().expect("elementary");
                let n = entry_size(&c);
                (n, c)
            })
            .min_by(|a, b| a.0.cmp(&b.0));
        match best {
            Some((n, c)) if n < size => {
                size = n;
                cur = c;
            }
            _ => return Ok(cur),
        }
    }
}

/// Looks for two conjugates of `f` whose product has order 3. The search
/// first reduces `f` to `r = g f g^-1` and then tries pairs
/// `(r, h r h^-1)` with `h` a product of at most six elementary matrices
/// with entries in `[-2, 2]`; order is invariant under simultaneous
/// conjugation, so fixing the first factor loses nothing.
pub fn order3_falsifier<T: Scalar, G: rand::Rng + ?Sized>(
    f: &Matrix<T>,
    samples: usize,
    rng: &mut G,
) -> Result<Option<(Matrix<T>, Matrix<T>)>> {
    let (class, _) = classify_involution2(f)?;
    if matches!(class, InvolutionClass::PlusIdentity | InvolutionClass::MinusIdentity) {
        return domain("the falsifier needs a non-central involution");
    }
    let r = reduce_by_conjugation(f)?;
    for _ in 0..samples {
        let len = rng.gen_range(0..=6);
        let h: Matrix<T> = sample::elementary_product(2, len, 2, rng);
        let b = &(&h * &r) * &h.inverse2_unimodular()?;
        if element_order(&(&r * &b))? == Order::Finite(3) {
            return Ok(Some((r, b)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Mod61;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type M = Matrix<BigInt>;

    fn m(rows: [[i64; 2]; 2]) -> M {
        M::from_i64(&rows)
    }

    #[test]
    fn search_order_alternates() {
        assert_eq!(search_order(2).collect::<Vec<_>>(), [0, 1, -1, 2, -2]);
    }

    #[test]
    fn orders() {
        assert_eq!(element_order(&M::identity(2)).unwrap(), Order::Finite(1));
        assert_eq!(element_order(&m([[0, -1], [1, -1]])).unwrap(), Order::Finite(3));
        assert_eq!(element_order(&m([[0, -1], [1, 0]])).unwrap(), Order::Finite(4));
        assert_eq!(element_order(&m([[1, -1], [1, 0]])).unwrap(), Order::Finite(6));
        assert_eq!(element_order(&m([[1, 1], [0, 1]])).unwrap(), Order::Infinite);
        assert!(element_order(&m([[2, 0], [0, 1]])).is_err());
    }

    #[test]
    fn classification_examples() {
        let (c, p) = classify_involution2(&m([[1, 0], [2, -1]])).unwrap();
        assert_eq!(c, InvolutionClass::Diagonal);
        assert_eq!(p, m([[1, 0], [1, 1]]));
        let (c, p) = classify_involution2(&m([[1, 0], [3, -1]])).unwrap();
        assert_eq!(c, InvolutionClass::Swap);
        let back = &(&p * &c.representative()) * &p.inverse_unimodular().unwrap();
        assert_eq!(back, m([[1, 0], [3, -1]]));
        let (c, p) = classify_involution2(&m([[-1, 0], [0, -1]])).unwrap();
        assert_eq!(c, InvolutionClass::MinusIdentity);
        assert!(p.is_identity());
        assert!(classify_involution2(&m([[1, 1], [0, 1]])).is_err());
    }

    #[test]
    fn xy_for_swap() {
        let s = m([[0, 1], [1, 0]]);
        for k in 0..3i64 {
            let x = xy_matrix(&s, k, Mode::X, Parity::Even).unwrap();
            assert_eq!(x, m([[-1, 2 * k], [-2 * k, 4 * k * k - 1]]));
        }
        assert_eq!(
            noncentral_successor(&s, Mode::X, Parity::Even).unwrap(),
            (1, m([[-1, 2], [-2, 3]]))
        );
        let w = noncentral_sigma_walk(&s, 1, Parity::Even).unwrap();
        assert_eq!(w[0].term, m([[-1, 2], [-2, 3]]));
        assert!(noncentral_sigma_walk(&s, 0, Parity::Even).unwrap().is_empty());
    }

    #[test]
    fn walk_from_unipotent() {
        let w = noncentral_sigma_walk(&m([[1, 1], [0, 1]]), 5, Parity::Even).unwrap();
        assert_eq!(w.len(), 5);
        assert!(w.iter().all(|s| !s.term.is_central2()));
        // first step: F S F S^-1 with m = 0 gives (1 -2; 0 1)
        assert_eq!(w[0].term, m([[1, -2], [0, 1]]));
    }

    #[test]
    fn lower_unipotent_degeneracy() {
        // F S F = S^-1 for every lower family member, so X(m) = I for all m
        let s = m([[1, 0], [3, 1]]);
        for k in -5..=5 {
            assert!(xy_matrix(&s, k, Mode::X, Parity::Even).unwrap().is_identity());
        }
        assert!(matches!(
            noncentral_successor(&s, Mode::X, Parity::Even),
            Err(Error::Search(_))
        ));
        let profile = linearity_profile(&s, Mode::X, Parity::Even).unwrap();
        assert_eq!(profile.tracked(), None);
        assert!(noncentral_successor_within(&s, Mode::X, Parity::Even, Orientation::Upper, 5).is_ok());
        let w = noncentral_sigma_walk(&s, 2, Parity::Even).unwrap();
        assert_eq!(w[1].orientation, Orientation::Upper);
    }

    #[test]
    fn modular_walk_matches_exact() {
        let s0 = m([[2, 1], [1, 1]]);
        let exact = noncentral_sigma_walk(&s0, 6, Parity::Odd).unwrap();
        let modular = noncentral_sigma_walk(&s0.map(Mod61::from_bigint), 6, Parity::Odd).unwrap();
        for (a, b) in exact.iter().zip(&modular) {
            assert_eq!(a.m, b.m);
            assert_eq!(a.term.map(Mod61::from_bigint), b.term);
        }
    }

    #[test]
    fn known_order_three_product() {
        let a = m([[0, 1], [1, 0]]);
        let b = m([[1, 0], [-1, -1]]);
        assert_eq!(classify_involution2(&b).unwrap().0, InvolutionClass::Swap);
        assert_eq!(&a * &b, m([[-1, -1], [1, 0]]));
        assert_eq!(element_order(&(&a * &b)).unwrap(), Order::Finite(3));
    }

    #[test]
    fn falsifier_on_large_conjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let swap = m([[0, 1], [1, 0]]);
        let diag = m([[1, 0], [0, -1]]);
        for _ in 0..10 {
            let q: M = sample::random_unimodular(2, &mut rng);
            let qi = q.inverse_unimodular().unwrap();
            let f = &(&q * &swap) * &qi;
            let r = reduce_by_conjugation(&f).unwrap();
            assert_eq!(classify_involution2(&r).unwrap().0, InvolutionClass::Swap);
            let (a, b) = order3_falsifier(&f, 500, &mut rng).unwrap().expect("witness");
            assert_eq!(element_order(&(&a * &b)).unwrap(), Order::Finite(3));
            let d = &(&q * &diag) * &qi;
            assert!(order3_falsifier(&d, 200, &mut rng).unwrap().is_none());
        }
    }

    #[test]
    fn falsifier() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let swap = m([[0, 1], [1, 0]]);
        let (a, b) = order3_falsifier(&swap, 500, &mut rng).unwrap().expect("witness");
        assert_eq!(element_order(&(&a * &b)).unwrap(), Order::Finite(3));
        assert!(order3_falsifier(&m([[1, 0], [0, -1]]), 500, &mut rng)
            .unwrap()
            .is_none());
        assert!(order3_falsifier(&swap, 0, &mut rng).unwrap().is_none());
        assert!(order3_falsifier(&M::identity(2), 10, &mut rng).is_err());
    }
}
