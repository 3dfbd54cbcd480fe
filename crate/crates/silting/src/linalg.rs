//! Dense exact linear algebra over a [`Field`].
//!
//! Row reduction uses a deterministic pivot rule (first nonzero entry in
//! column order) so that every derived basis is reproducible across runs.

use crate::field::Field;

/// Dense row-major matrix. Vectors are columns; a linear map is applied as
/// `matrix * column`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn filled(rows: usize, cols: usize, t: T) -> Self {
        Mat {
            rows,
            cols,
            data: vec![t; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, t: T) {
        self.data[i * self.cols + j] = t;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    Mat::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    Mat::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn mat_mul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows, "shape mismatch in mat_mul");
    Mat::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = f.zero();
        for k in 0..a.cols {
            if !f.is_zero(a.at(i, k)) && !f.is_zero(b.at(k, j)) {
                acc = f.add(&acc, &f.mul(a.at(i, k), b.at(k, j)));
            }
        }
        acc
    })
}

pub fn mat_add<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat::from_fn(a.rows, a.cols, |i, j| f.add(a.at(i, j), b.at(i, j)))
}

pub fn mat_sub<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat::from_fn(a.rows, a.cols, |i, j| f.sub(a.at(i, j), b.at(i, j)))
}

pub fn mat_scale<F: Field>(f: &F, c: &F::Elem, a: &Mat<F::Elem>) -> Mat<F::Elem> {
    Mat::from_fn(a.rows, a.cols, |i, j| f.mul(c, a.at(i, j)))
}

pub fn mat_is_zero<F: Field>(f: &F, a: &Mat<F::Elem>) -> bool {
    (0..a.rows).all(|i| (0..a.cols).all(|j| f.is_zero(a.at(i, j))))
}

pub fn apply<F: Field>(f: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = f.zero();
            for k in 0..a.cols {
                if !f.is_zero(a.at(i, k)) && !f.is_zero(&v[k]) {
                    acc = f.add(&acc, &f.mul(a.at(i, k), &v[k]));
                }
            }
            acc
        })
        .collect()
}

/// Reduced row echelon form in place. Returns the pivot columns in order.
pub fn rref_in_place<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // first nonzero in column order
        let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.at(i, c))) else {
            continue;
        };
        if pr != r {
            for j in 0..m.cols {
                let a = m.at(pr, j).clone();
                let b = m.at(r, j).clone();
                m.set(pr, j, b);
                m.set(r, j, a);
            }
        }
        let pinv = f.inv(m.at(r, c)).expect("pivot must be invertible");
        for j in 0..m.cols {
            let v = f.mul(m.at(r, j), &pinv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i != r && !f.is_zero(m.at(i, c)) {
                let factor = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    let mut c = m.clone();
    rref_in_place(f, &mut c).len()
}

/// Basis of the right kernel, returned as the columns of a matrix.
pub fn kernel_basis<F: Field>(f: &F, m: &Mat<F::Elem>) -> Mat<F::Elem> {
    let mut r = m.clone();
    let pivots = rref_in_place(f, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = zeros(f, m.cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, f.one());
        for (pi, &pc) in pivots.iter().enumerate() {
            let v = f.neg(r.at(pi, fc));
            out.set(pc, k, v);
        }
    }
    out
}

/// Indices of a deterministic column basis of the column space.
pub fn column_basis_indices<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<usize> {
    let mut r = m.clone();
    rref_in_place(f, &mut r)
}

/// Solve `A X = B` for `X`; `None` when inconsistent.
pub fn solve_matrix<F: Field>(
    f: &F,
    a: &Mat<F::Elem>,
    b: &Mat<F::Elem>,
) -> Option<Mat<F::Elem>> {
    assert_eq!(a.rows, b.rows);
    let mut aug = a.hstack(b);
    let pivots = rref_in_place(f, &mut aug);
    if pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = zeros(f, a.cols, b.cols);
    for (pi, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, aug.at(pi, a.cols + j).clone());
        }
    }
    Some(x)
}

pub fn inverse<F: Field>(f: &F, a: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    if a.rows != a.cols {
        return None;
    }
    let id = identity(f, a.rows);
    let x = solve_matrix(f, a, &id)?;
    if mat_is_zero(f, &mat_sub(f, &mat_mul(f, a, &x), &id)) {
        Some(x)
    } else {
        None
    }
}

pub fn is_invertible<F: Field>(f: &F, a: &Mat<F::Elem>) -> bool {
    a.rows == a.cols && rank(f, a) == a.rows
}

/// Express `v` in the span of the rows of an rref matrix with the given
/// pivot columns. Returns the coefficients, or `None` if `v` leaves the span.
pub fn coords_in_rref_span<F: Field>(
    f: &F,
    rref: &Mat<F::Elem>,
    pivots: &[usize],
    v: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let mut rem: Vec<F::Elem> = v.to_vec();
    let mut coeffs = Vec::with_capacity(pivots.len());
    for (ri, &pc) in pivots.iter().enumerate() {
        let c = rem[pc].clone();
        if !f.is_zero(&c) {
            for j in 0..rem.len() {
                rem[j] = f.sub(&rem[j], &f.mul(&c, rref.at(ri, j)));
            }
        }
        coeffs.push(c);
    }
    if rem.iter().all(|x| f.is_zero(x)) {
        Some(coeffs)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let f = fp();
        // [[1,2],[2,4]] has rank 1
        let mut m = Mat::from_rows(vec![vec![1u64, 2], vec![2, 4]]);
        let piv = rref_in_place(&f, &mut m);
        assert_eq!(piv, vec![0]);
        assert_eq!(*m.at(0, 1), 2);
    }

    #[test]
    fn kernel_annihilates() {
        let f = fp();
        let m = Mat::from_rows(vec![vec![1u64, 2, 3], vec![4, 5, 6]]);
        let k = kernel_basis(&f, &m);
        assert_eq!(k.cols, 1);
        let v = k.col(0);
        let mv = apply(&f, &m, &v);
        assert!(mv.iter().all(|x| *x == 0));
    }

    #[test]
    fn solve_and_inverse() {
        let f = fp();
        let a = Mat::from_rows(vec![vec![2u64, 1], vec![1, 1]]);
        let inv = inverse(&f, &a).unwrap();
        let prod = mat_mul(&f, &a, &inv);
        assert_eq!(prod, identity(&f, 2));
        let singular = Mat::from_rows(vec![vec![1u64, 2], vec![2, 4]]);
        assert!(inverse(&f, &singular).is_none());
    }

    #[test]
    fn rational_kernel_exact() {
        let q = Rationals;
        let m = Mat::from_rows(vec![
            vec![q.parse("1/2").unwrap(), q.parse("1/3").unwrap()],
            vec![q.parse("3/2").unwrap(), q.parse("1").unwrap()],
        ]);
        let k = kernel_basis(&q, &m);
        assert_eq!(k.cols, 1);
        let v = k.col(0);
        let mv = apply(&q, &m, &v);
        assert!(mv.iter().all(|x| q.is_zero(x)));
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..5, seed in 0u64..500) {
            let f = fp();
            let mut s = seed;
            let m = Mat::from_fn(rows, cols, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) % 7
            });
            let r = rank(&f, &m);
            let k = kernel_basis(&f, &m);
            prop_assert_eq!(r + k.cols, cols);
            for j in 0..k.cols {
                let v = k.col(j);
                prop_assert!(apply(&f, &m, &v).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn coords_roundtrip(seed in 0u64..200) {
            let f = fp();
            let mut s = seed;
            let mut m = Mat::from_fn(3, 5, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(99);
                (s >> 33) % 11
            });
            let pivots = rref_in_place(&f, &mut m);
            // random combination of rows must round-trip
            let c: Vec<u64> = (0..pivots.len()).map(|i| (seed + i as u64) % 5).collect();
            let mut v = vec![0u64; 5];
            for (i, ci) in c.iter().enumerate() {
                for j in 0..5 {
                    v[j] = f.add(&v[j], &f.mul(ci, m.at(i, j)));
                }
            }
            let got = coords_in_rref_span(&f, &m, &pivots, &v).unwrap();
            prop_assert_eq!(got, c);
        }
    }
}
