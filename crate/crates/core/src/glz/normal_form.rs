//! Hermite and Smith normal forms over the integers.

use super::Matrix;
use crate::scalar::Scalar;

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * m = H`.
///
/// `H` is in row echelon form with positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, and its zero rows last. It depends only on the
/// row lattice of `m`.
pub fn hermite_form<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |a[i][c]| for i >= r
            let best = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()));
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                let nq = -q;
                a.add_row_multiple(i, r, &nq);
                u.add_row_multiple(i, r, &nq);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            if !q.is_zero() {
                let nq = -q;
                a.add_row_multiple(i, r, &nq);
                u.add_row_multiple(i, r, &nq);
            }
        }
        r += 1;
    }
    (a, u)
}

/// Number of nonzero rows of a matrix already in echelon form.
pub(crate) fn echelon_rank<T: Scalar>(h: &Matrix<T>) -> usize {
    (0..h.rows())
        .take_while(|&i| h.row(i).iter().any(|v| !v.is_zero()))
        .count()
}

/// Smith normal form `(U, D, V)` with `U * m * V = D`, `U` and `V`
/// unimodular, `D` diagonal with nonnegative entries `d_1 | d_2 | ..`.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>, Matrix<T>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // pivot: smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let nq = -q;
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let nq = -q;
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
    }
    finish(u, d, v)
}

fn finish<T: Scalar>(mut u: Matrix<T>, mut d: Matrix<T>, v: Matrix<T>) -> (Matrix<T>, Matrix<T>, Matrix<T>) {
    for t in 0..d.rows().min(d.cols()) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (u, d, v)
}

/// Basis (as rows) of the saturated lattice `{v : m v = 0}`.
pub fn right_kernel<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let (h, u) = hermite_form(&m.transpose());
    let r = echelon_rank(&h);
    let rows: Vec<Vec<T>> = (r..u.rows()).map(|i| u.row(i).to_vec()).collect();
    if rows.is_empty() {
        Matrix::zeros(0, m.cols())
    } else {
        Matrix::from_rows(rows).expect("rectangular")
    }
}

/// Integer coefficients `x` with `x * basis = v`, when `basis` is in row
/// Hermite form without zero rows.
pub(crate) fn solve_in_echelon<T: Scalar>(basis: &Matrix<T>, v: &[T]) -> Option<Vec<T>> {
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let row = basis.row(i);
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero echelon row");
        let (q, rem) = rest[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        for (r, b) in rest.iter_mut().zip(row) {
            *r -= b.mul_ref(&q);
        }
        coeffs.push(q);
    }
    rest.iter().all(|x| x.is_zero()).then_some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    type M = Matrix<BigInt>;

    fn is_diagonal_chain(d: &M) -> bool {
        let n = d.rows().min(d.cols());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j && !d[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        (1..n).all(|t| {
            d[(t - 1, t - 1)].is_zero() && d[(t, t)].is_zero()
                || !d[(t - 1, t - 1)].is_zero() && d[(t, t)].is_multiple_of(&d[(t - 1, t - 1)])
        }) && (0..n).all(|t| !d[(t, t)].is_negative())
    }

    #[test]
    fn smith_examples() {
        let (u, d, v) = smith_normal_form(&M::from_i64(&[[2, 0], [0, 3]]));
        assert_eq!(d, M::from_i64(&[[1, 0], [0, 6]]));
        assert!(u.is_unimodular() && v.is_unimodular());
        assert_eq!(&(&u * &M::from_i64(&[[2, 0], [0, 3]])) * &v, d);

        let (_, d, _) = smith_normal_form(&M::identity(3));
        assert!(d.is_identity());

        let row = M::from_i64(&[[2, 4]]);
        let (u, d, v) = smith_normal_form(&row);
        assert_eq!(d, M::from_i64(&[[2, 0]]));
        assert_eq!(&(&u * &row) * &v, d);
    }

    #[test]
    fn smith_random_shapes() {
        let cases = [
            M::from_i64(&[[4, 6, 2], [6, 9, 3], [2, 3, 8]]),
            M::from_i64(&[[0, 0], [0, 0], [3, 0]]),
            M::from_i64(&[[6, 10, 15]]),
            M::from_i64(&[[12, 18], [8, -4], [6, 3]]),
        ];
        for m in cases {
            let (u, d, v) = smith_normal_form(&m);
            assert!(u.is_unimodular() && v.is_unimodular());
            assert_eq!(&(&u * &m) * &v, d);
            assert!(is_diagonal_chain(&d), "{d}");
        }
    }

    #[test]
    fn hermite_is_canonical() {
        let a = M::from_i64(&[[2, 4, 6], [1, 1, 1]]);
        let b = M::from_i64(&[[3, 5, 7], [-1, -1, -1]]);
        let (ha, ua) = hermite_form(&a);
        let (hb, _) = hermite_form(&b);
        assert_eq!(ha, hb);
        assert_eq!(&ua * &a, ha);
        assert_eq!(ha, M::from_i64(&[[1, 1, 1], [0, 2, 4]]));
    }

    #[test]
    fn kernel_and_solve() {
        let m = M::from_i64(&[[1, 2, 3]]);
        let k = right_kernel(&m);
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            assert!(m.apply(k.row(i)).iter().all(|x| x == &BigInt::from(0)));
        }
        let (h, _) = hermite_form(&M::from_i64(&[[2, 0], [0, 3]]));
        let two = |v: [i64; 2]| v.map(BigInt::from);
        assert_eq!(
            solve_in_echelon(&h, &two([4, 9])),
            Some(vec![BigInt::from(2), BigInt::from(3)])
        );
        assert_eq!(solve_in_echelon(&h, &two([1, 0])), None);
    }
}
