//! LU factorization with partial pivoting for small dense complex matrices.
//!
//! The factors deliberately survive singular input: pivots are stored as
//! computed and only floored at solve time. Solving against a (nearly)
//! singular matrix then returns the hugely amplified component along the
//! null direction instead of overflowing — exactly what inverse iteration
//! needs to refine a null-vector estimate.

use super::ComplexMatrix;
use crate::scalar::Real;
use crate::{Error, Result};
use num_complex::Complex;

/// Compact factorization `P·m = L·U` (unit lower triangular `L` and upper
/// triangular `U` share storage; `P` is a row permutation).
pub struct LuFactors<R: Real> {
    lu: ComplexMatrix<R>,
    perm: Vec<usize>,
    scale: R,
}

impl<R: Real> LuFactors<R> {
    /// Factors a square matrix. Singular input is accepted; the resulting
    /// zero (or tiny) pivots are handled by [`LuFactors::solve`].
    pub fn factor(m: &ComplexMatrix<R>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu[(k, k)].norm();
            for i in k + 1..n {
                let mag = lu[(i, k)].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = i;
                }
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
            }
            if pivot_mag == R::zero() {
                // Structurally singular column; nothing to eliminate.
                continue;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let update = factor * lu[(k, j)];
                    lu[(i, j)] -= update;
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            scale: m.max_abs(),
        })
    }

    /// Solves `m·x = b`. Pivots below `n·ε·‖m‖_max` are floored to that
    /// threshold (keeping their phase), so singular systems yield a large
    /// but finite solution dominated by the null direction.
    pub fn solve(&self, b: &[Complex<R>]) -> Vec<Complex<R>> {
        let n = self.perm.len();
        debug_assert_eq!(b.len(), n);
        let floor = {
            let f = R::epsilon() * self.scale * R::lit(n as f64);
            if f > R::zero() {
                f
            } else {
                R::epsilon()
            }
        };
        // Forward substitution with the permuted right-hand side.
        let mut x: Vec<Complex<R>> = (0..n).map(|i| b[self.perm[i]]).collect();
        for i in 1..n {
            for j in 0..i {
                let update = self.lu[(i, j)] * x[j];
                x[i] -= update;
            }
        }
        // Back substitution against U, flooring degenerate pivots.
        for i in (0..n).rev() {
            for j in i + 1..n {
                let update = self.lu[(i, j)] * x[j];
                x[i] -= update;
            }
            let mut pivot = self.lu[(i, i)];
            let mag = pivot.norm();
            if mag < floor {
                pivot = if mag == R::zero() {
                    Complex::new(floor, R::zero())
                } else {
                    pivot.scale(floor / mag)
                };
            }
            x[i] /= pivot;
        }
        x
    }
}
