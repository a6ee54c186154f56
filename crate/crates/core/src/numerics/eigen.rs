//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! For the matrix sizes in this crate (≤ 16, usually 3, 4, or 9) Jacobi is
//! simple, unconditionally stable, and converges quadratically once the
//! off-diagonal mass is small; there is no need for Householder reduction or
//! an external LAPACK binding.

use super::ComplexMatrix;
use crate::scalar::{cre, czero, Real};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and a matrix whose columns are the
/// matching orthonormal eigenvectors, so `m = V diag(λ) V†`.
///
/// Errors if `m` is not square or deviates from hermiticity by more than
/// `R::tol_state()` (scaled by the matrix magnitude), naming the offending
/// entry, or if the sweep cap is hit (which does not happen for finite
/// Hermitian input of these sizes).
pub fn hermitian_eigen<R: Real>(m: &ComplexMatrix<R>) -> Result<(Vec<R>, ComplexMatrix<R>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let scale = m.max_abs().max(R::one());
    let (dev, di, dj) = m.hermiticity_deviation();
    if dev > R::tol_state() * scale {
        return Err(Error::NotHermitian {
            row: di,
            col: dj,
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut a = m.hermitian_part(); // exact-hermitian working copy
    let mut v = ComplexMatrix::<R>::identity(n);
    let fro = a.frobenius();
    if n == 1 || fro == R::zero() {
        let mut vals: Vec<R> = (0..n).map(|i| a[(i, i)].re).collect();
        sort_ascending(&mut vals, &mut v);
        return Ok((vals, v));
    }
    // Stop when the off-diagonal mass is at rounding level relative to the
    // matrix; skip rotations that cannot reduce it meaningfully.
    let stop = R::epsilon() * fro;
    let skip = stop * R::lit(1e-2) / R::lit((n * n) as f64);

    for sweep in 0..MAX_SWEEPS {
        let off = off_norm(&a);
        if off <= stop {
            let mut vals: Vec<R> = (0..n).map(|i| a[(i, i)].re).collect();
            sort_ascending(&mut vals, &mut v);
            return Ok((vals, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, skip);
            }
        }
        // Guard against a stalled final sweep: accept once off-norm is at
        // most a small multiple of rounding even if not strictly below stop.
        if sweep == MAX_SWEEPS - 1 {
            let off = off_norm(&a);
            if off <= stop * R::lit(100.0) {
                let mut vals: Vec<R> = (0..n).map(|i| a[(i, i)].re).collect();
                sort_ascending(&mut vals, &mut v);
                return Ok((vals, v));
            }
        }
    }
    Err(Error::EigenNoConvergence {
        sweeps: MAX_SWEEPS,
        residual: off_norm(&a).to_f64().unwrap_or(f64::NAN),
    })
}

fn off_norm<R: Real>(a: &ComplexMatrix<R>) -> R {
    let n = a.rows();
    let mut s = R::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing `a[(p,q)]`, accumulated into `v`.
///
/// With `a[(p,q)] = g e^{iφ}`, the 2×2 unitary `[[c, -σ e^{iφ}], [σ e^{-iφ}, c]]`
/// (c, σ real, c² + σ² = 1) conjugates the (p,q) block to diagonal form when
/// tan of the rotation angle `t = σ/c` solves `g t² − (a_qq − a_pp) t − g = 0`;
/// with `τ = (a_qq − a_pp)/2g` the root smaller in magnitude,
/// `t = −sign(τ)/(|τ| + √(1 + τ²))`, is the numerically stable choice.
fn rotate<R: Real>(
    a: &mut ComplexMatrix<R>,
    v: &mut ComplexMatrix<R>,
    p: usize,
    q: usize,
    skip: R,
) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g <= skip {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (R::lit(2.0) * g);
    let sign = if tau >= R::zero() {
        R::one()
    } else {
        -R::one()
    };
    let t = -sign / (tau.abs() + (R::one() + tau * tau).sqrt());
    let c = R::one() / (R::one() + t * t).sqrt();
    let sigma = t * c;
    let phase = apq.unscale(g); // e^{iφ}
    let s = phase.conj().scale(sigma); // σ e^{-iφ} = J[(q,p)]
    let n = a.rows();

    // A ← J† A J: first columns (A J), then rows (J† ·).
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp.scale(c) + s * akq;
        a[(k, q)] = akq.scale(c) - s.conj() * akp;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk.scale(c) + s.conj() * aqk;
        a[(q, k)] = aqk.scale(c) - s * apk;
    }
    // Clean the rotated pair: the (p,q) entry is zero by construction and the
    // diagonal stays real; writing that explicitly stops rounding residue
    // from accumulating over sweeps.
    a[(p, q)] = czero();
    a[(q, p)] = czero();
    a[(p, p)] = cre(a[(p, p)].re);
    a[(q, q)] = cre(a[(q, q)].re);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp.scale(c) + s * vkq;
        v[(k, q)] = vkq.scale(c) - s.conj() * vkp;
    }
}

/// Sorts eigenvalues ascending, permuting the eigenvector columns alongside.
fn sort_ascending<R: Real>(vals: &mut [R], v: &mut ComplexMatrix<R>) {
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).expect("finite eigenvalues"));
    let old_vals = vals.to_vec();
    let old_v = v.clone();
    for (new, &old) in order.iter().enumerate() {
        vals[new] = old_vals[old];
        for k in 0..v.rows() {
            v[(k, new)] = old_v[(k, old)];
        }
    }
}
