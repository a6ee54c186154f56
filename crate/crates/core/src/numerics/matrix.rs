//! Dense complex matrix in row-major storage.
//!
//! Dimensions are tiny and fixed by the problem (3 for the collective basis,
//! 4 for the product basis, 9 for the Liouvillian), so the type favors
//! clarity over scale: plain `Vec` storage, O(n³) multiplication, and
//! panicking dimension checks — mismatched shapes are programmer errors, not
//! runtime conditions.

use crate::scalar::{czero, Real};
use num_complex::Complex;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// Hard cap on either dimension; the largest matrix in the crate is the 9×9
/// Liouvillian, and kron products of permitted sizes stay within this bound.
pub const MAX_DIM: usize = 16;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> ComplexMatrix<R> {
    fn check_dims(rows: usize, cols: usize) {
        assert!(
            rows > 0 && cols > 0 && rows <= MAX_DIM && cols <= MAX_DIM,
            "matrix dimensions {rows}x{cols} outside 1..={MAX_DIM}"
        );
    }

    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::check_dims(rows, cols);
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(R::one(), R::zero());
        }
        m
    }

    /// Builds a matrix entry by entry; `f(row, col)` must return finite values.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex<R>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert!(
                    v.re.is_finite() && v.im.is_finite(),
                    "non-finite entry at ({i},{j})"
                );
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Builds a matrix from row slices of equal length.
    pub fn from_rows(rows: &[&[Complex<R>]]) -> Self {
        let nr = rows.len();
        assert!(nr > 0, "empty row list");
        let nc = rows[0].len();
        Self::from_fn(nr, nc, |i, j| {
            assert_eq!(rows[i].len(), nc, "ragged row {i}");
            rows[i][j]
        })
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

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex<R> {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = czero();
        for i in 0..self.rows {
            t += self[(i, i)];
        }
        t
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> R {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(R::zero(), |a, b| if b > a { b } else { a })
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> R {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(R::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Largest absolute deviation from hermiticity together with the entry
    /// where it occurs (upper-triangle index).
    pub fn hermiticity_deviation(&self) -> (R, usize, usize) {
        assert!(self.is_square(), "hermiticity of non-square matrix");
        let mut worst = (R::zero(), 0, 0);
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }

    /// `self + c * other`, accumulated in place.
    pub fn add_scaled(&mut self, other: &Self, c: Complex<R>) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add_scaled"
        );
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += c * *b;
        }
    }

    /// Matrix scaled by a complex factor.
    pub fn scaled(&self, c: Complex<R>) -> Self {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = c * *a;
        }
        m
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Complex<R>]) -> Vec<Complex<R>> {
        assert_eq!(self.cols, v.len(), "matvec length mismatch");
        let mut out = vec![czero(); self.rows];
        for i in 0..self.rows {
            let mut acc = czero();
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::check_dims(r, c);
        Self::from_fn(r, c, |i, j| {
            let (i1, i2) = (i / other.rows, i % other.rows);
            let (j1, j2) = (j / other.cols, j % other.cols);
            self[(i1, j1)] * other[(i2, j2)]
        })
    }

    /// Outer product `u v†` of two vectors.
    pub fn outer(u: &[Complex<R>], v: &[Complex<R>]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    /// Column-stacking vectorization: columns concatenated top to bottom,
    /// so `vec(m)[j*rows + i] = m[(i, j)]`. This is the convention the
    /// Liouvillian construction depends on (`vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`);
    /// it is fixed project-wide.
    pub fn vectorize(&self) -> Vec<Complex<R>> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)]);
            }
        }
        v
    }

    /// Inverse of [`vectorize`](Self::vectorize) for an `n × n` matrix.
    /// The round trip is exact (pure data movement).
    pub fn devectorize(v: &[Complex<R>], n: usize) -> Self {
        assert_eq!(v.len(), n * n, "devectorize length mismatch");
        Self::from_fn(n, n, |i, j| v[j * n + i])
    }

    /// Hermitian part `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square(), "hermitian part of non-square matrix");
        let half = R::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()).scale(half)
        })
    }
}

impl<R: Real> Index<(usize, usize)> for ComplexMatrix<R> {
    type Output = Complex<R>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &self.data[i * self.cols + j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for ComplexMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Real> Mul for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn mul(self, rhs: &ComplexMatrix<R>) -> ComplexMatrix<R> {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == czero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<R: Real> Add for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn add(self, rhs: &ComplexMatrix<R>) -> ComplexMatrix<R> {
        let mut out = self.clone();
        out.add_scaled(rhs, Complex::new(R::one(), R::zero()));
        out
    }
}

impl<R: Real> Sub for &ComplexMatrix<R> {
    type Output = ComplexMatrix<R>;
    fn sub(self, rhs: &ComplexMatrix<R>) -> ComplexMatrix<R> {
        let mut out = self.clone();
        out.add_scaled(rhs, Complex::new(-R::one(), R::zero()));
        out
    }
}

impl<R: Real> fmt::Debug for ComplexMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ci, cone, cre};

    type M = ComplexMatrix<f64>;

    #[test]
    fn identity_is_multiplicative_unit() {
        let a = M::from_fn(3, 3, |i, j| Complex::new((i + 2 * j) as f64, j as f64));
        let id = M::identity(3);
        assert_eq!(&a * &id, a);
        assert_eq!(&id * &a, a);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = M::from_rows(&[&[cone(), ci()], &[cre(2.0), Complex::new(1.0, -3.0)]]);
        let ad = a.adjoint();
        assert_eq!(ad[(0, 1)], cre(2.0));
        assert_eq!(ad[(1, 0)], Complex::new(0.0, -1.0));
        assert_eq!(ad[(1, 1)], Complex::new(1.0, 3.0));
    }

    #[test]
    fn vectorize_is_column_stacking() {
        let a = M::from_rows(&[&[cre(1.0), cre(3.0)], &[cre(2.0), cre(4.0)]]);
        let v = a.vectorize();
        let got: Vec<f64> = v.iter().map(|z| z.re).collect();
        assert_eq!(got, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn devectorize_round_trip_is_exact() {
        let a = M::from_fn(4, 4, |i, j| {
            Complex::new(0.1 * (i as f64) - 0.7 * (j as f64), (i * j) as f64 / 3.0)
        });
        let b = M::devectorize(&a.vectorize(), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn kron_matches_hand_example() {
        let a = M::from_rows(&[&[cre(1.0), cre(2.0)], &[cre(3.0), cre(4.0)]]);
        let b = M::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 0)], cre(1.0));
        assert_eq!(k[(0, 2)], cre(2.0));
        assert_eq!(k[(1, 3)], cre(2.0));
        assert_eq!(k[(2, 0)], cre(3.0));
        assert_eq!(k[(3, 3)], cre(4.0));
        assert_eq!(k[(0, 1)], cre(0.0));
    }

    #[test]
    fn kron_reproduces_vec_of_sandwich() {
        // vec(A X B) = (Bᵀ ⊗ A) vec(X) under column stacking.
        let a = M::from_fn(3, 3, |i, j| Complex::new((i + j) as f64, i as f64 - 1.0));
        let b = M::from_fn(3, 3, |i, j| Complex::new((2 * i) as f64 - j as f64, 0.5));
        let x = M::from_fn(3, 3, |i, j| {
            Complex::new(1.0 / (1 + i + j) as f64, j as f64)
        });
        let lhs = (&(&a * &x) * &b).vectorize();
        let rhs = b.transpose().kron(&a).matvec(&x.vectorize());
        for (l, r) in lhs.iter().zip(rhs.iter()) {
            assert!((l - r).norm() < 1e-12);
        }
    }

    #[test]
    fn hermiticity_deviation_names_offender() {
        let mut a = M::identity(3);
        a[(0, 2)] = Complex::new(0.0, 0.5);
        a[(2, 0)] = Complex::new(0.0, 0.5); // should be -0.5i to mirror
        let (d, i, j) = a.hermiticity_deviation();
        assert!((d - 1.0).abs() < 1e-15);
        assert_eq!((i, j), (0, 2));
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn oversized_dimensions_panic() {
        let _ = M::zeros(17, 1);
    }
}
