//! Small dense matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::AlgebraError;
use crate::ring::Ring;
use crate::scalar::FieldScalar;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R = FieldScalar> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn diagonal(entries: &[R]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc.add_assign_ref(&a.times(other.get(k, j)));
            }
            acc
        })
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scaled(&self, c: &FieldScalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.scaled(c)).collect() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn trace(&self) -> R {
        let mut acc = R::zero();
        for i in 0..self.rows.min(self.cols) {
            acc.add_assign_ref(self.get(i, i));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Matrix<FieldScalar> {
    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = FieldScalar::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let pivot = m[r * cols + c].clone();
            for i in r + 1..rows {
                let lead = m[i * cols + c].clone();
                for j in c + 1..cols {
                    let v = &(&pivot * &m[i * cols + j]) - &(&lead * &m[r * cols + j]);
                    m[i * cols + j] = v.checked_div(&prev).expect("Bareiss divisor is a nonzero pivot");
                }
                m[i * cols + c] = FieldScalar::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> FieldScalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return FieldScalar::one();
        }
        let mut m = self.data.clone();
        let mut prev = FieldScalar::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return FieldScalar::zero();
                };
                for j in 0..n {
                    m.swap(p * n + j, k * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&pivot * &m[i * n + j]) - &(&m[i * n + k] * &m[k * n + j]);
                    m[i * n + j] = v.checked_div(&prev).expect("Bareiss divisor is a nonzero pivot");
                }
                m[i * n + k] = FieldScalar::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(AlgebraError::Singular)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a.get(c, c).inv()?;
            for j in 0..n {
                let v = a.get(c, j) * &pinv;
                a.set(c, j, v);
                let w = inv.get(c, j) * &pinv;
                inv.set(c, j, w);
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                    let w = inv.get(i, j) - &(&f * inv.get(c, j));
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// Monic characteristic polynomial `det(x I - M)` (Faddeev-LeVerrier).
    pub fn char_poly(&self) -> UPoly {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![FieldScalar::zero(); n + 1];
        coeffs[n] = FieldScalar::one();
        let mut aux = Self::zeros(n, n);
        for k in 1..=n {
            // aux_k = A aux_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&aux);
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let tr = self.mul(&next).trace();
            coeffs[n - k] = -(&tr * &FieldScalar::from_ratio(1, k as i64));
            aux = next;
        }
        UPoly::new(coeffs)
    }

    /// Numbers of positive and negative squares in a congruence-diagonal
    /// form of a symmetric matrix, plus the nullity.
    pub fn inertia(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "inertia of a non-symmetric matrix");
        let n = self.rows;
        let mut a = self.clone();
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for k in 0..n {
            if a.get(k, k).is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                    a.swap_sym(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                    // e_k <- e_k + e_j makes the diagonal entry 2 a_kj + a_jj = 2 a_kj
                    a.add_sym(k, j);
                } else {
                    zero += 1;
                    continue;
                }
            }
            let pivot = a.get(k, k).clone();
            match pivot.signum() {
                1 => pos += 1,
                _ => neg += 1,
            }
            let pinv = pivot.inv().expect("nonzero pivot");
            for i in k + 1..n {
                let f = a.get(i, k) * &pinv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &(&f * a.get(k, j));
                    a.set(i, j, v);
                }
                for j in k..n {
                    let v = a.get(j, i) - &(&f * a.get(j, k));
                    a.set(j, i, v);
                }
            }
        }
        (pos, neg, zero)
    }

    fn swap_sym(&mut self, a: usize, b: usize) {
        let n = self.rows;
        for j in 0..n {
            self.data.swap(a * n + j, b * n + j);
        }
        for i in 0..n {
            self.data.swap(i * n + a, i * n + b);
        }
    }

    fn add_sym(&mut self, k: usize, j: usize) {
        let n = self.rows;
        for c in 0..n {
            let v = self.get(k, c) + self.get(j, c);
            self.set(k, c, v);
        }
        for r in 0..n {
            let v = self.get(r, k) + self.get(r, j);
            self.set(r, k, v);
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(FieldScalar::to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| FieldScalar::from_int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn det_rank_inverse() {
        let a = m(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        assert_eq!(a.det(), FieldScalar::from_int(-5));
        assert_eq!(a.rank(), 3);
        assert!(a.mul(&a.inverse().unwrap()) == Matrix::identity(3));
        let s = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(s.det(), FieldScalar::zero());
        assert_eq!(s.rank(), 2);
        assert_eq!(s.inverse(), Err(AlgebraError::Singular));
        assert_eq!(Matrix::<FieldScalar>::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn char_poly_examples() {
        let z = Matrix::<FieldScalar>::zeros(4, 4);
        assert_eq!(z.char_poly(), UPoly::monomial(4));
        let d = m(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 4]]);
        let expect = [1, 2, 3, 4]
            .iter()
            .fold(UPoly::one(), |acc, &r| acc.mul(&UPoly::new(vec![FieldScalar::from_int(-r), FieldScalar::one()])));
        assert_eq!(d.char_poly(), expect);
    }

    #[test]
    fn inertia_counts() {
        assert_eq!(m(&[&[1, 0], &[0, -1]]).inertia(), (1, 1, 0));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).inertia(), (1, 1, 0));
        assert_eq!(m(&[&[0, 0], &[0, 0]]).inertia(), (0, 0, 2));
        assert_eq!(m(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, -3]]).inertia(), (2, 1, 0));
    }
}
