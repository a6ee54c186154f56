//! Null-vector extraction for small square matrices.
//!
//! The steady state of the master equation is the (unique) null direction of
//! the Liouvillian. Rather than a general SVD, the singular spectrum is
//! obtained from the Hermitian eigendecomposition of `m†m`, whose eigenvalues
//! are the squared singular values and whose eigenvectors are the right
//! singular vectors — exactly the side the null vector lives on.

use super::{hermitian_eigen, ComplexMatrix, LuFactors};
use crate::scalar::Real;
use crate::{Error, Result};
use num_complex::Complex;

/// Unit-norm vector `v` with `‖m·v‖ < tol·‖m‖_max`, for a matrix whose null
/// space is exactly one-dimensional.
///
/// Null directions are detected among the singular values below
/// `max(tol, 8√ε)` relative to the largest one: squaring the spectrum in
/// `m†m` floors the computable singular values at `√ε·σ_max`, so the
/// detection cutoff cannot be tighter than that even for an exactly
/// singular matrix. The eigenvector estimate is then refined through a
/// bordered solve against `m` itself, which removes the
/// squared-condition-number error of the detection route and brings the
/// direction back to working precision. The final residual check enforces
/// `tol` proper.
///
/// The returned phase is deterministic: the entry of largest magnitude is
/// made real and positive (ties broken by lowest index).
///
/// Errors with [`Error::NoNullVector`] when no singular value falls below
/// the cutoff (or the final residual misses `tol`) and with
/// [`Error::DegenerateNullSpace`] when two or more do.
pub fn null_vector<R: Real>(m: &ComplexMatrix<R>, tol: R) -> Result<Vec<Complex<R>>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let normal = &m.adjoint() * m;
    let (evals, evecs) = hermitian_eigen(&normal)?;
    // Ascending eigenvalues of m†m; clamp tiny negatives from roundoff.
    let singulars: Vec<R> = evals.iter().map(|&l| l.max(R::zero()).sqrt()).collect();
    let largest = singulars[n - 1].max(R::epsilon());
    let floor = R::epsilon().sqrt() * R::lit(8.0);
    let cutoff = tol.max(floor) * largest;
    let below = singulars.iter().filter(|&&s| s < cutoff).count();
    if below == 0 {
        return Err(Error::NoNullVector {
            smallest: singulars[0].to_f64().unwrap_or(f64::NAN),
            tol: cutoff.to_f64().unwrap_or(f64::NAN),
        });
    }
    if below > 1 {
        return Err(Error::DegenerateNullSpace {
            smallest: singulars[0].to_f64().unwrap_or(f64::NAN),
            second: singulars[1].to_f64().unwrap_or(f64::NAN),
            tol: cutoff.to_f64().unwrap_or(f64::NAN),
        });
    }

    let mut v: Vec<Complex<R>> = (0..n).map(|i| evecs[(i, 0)]).collect();
    canonical_phase(&mut v);

    // The Gram route caps the attainable accuracy at roughly ε·(σ_max/σ₂)².
    // Refine with the bordered (Wilkinson) system
    //     [[m, v], [v†, 0]] · [x; μ] = [0; 1],
    // which is nonsingular with condition number ~σ_max/σ₂ once v is close
    // to the null direction; its x-block is the null vector to
    // backward-stable accuracy. One pass of fixed-precision iterative
    // refinement then removes the elimination growth constant, leaving a
    // direction error near ε·σ_max/σ₂. The step is only kept when it
    // actually lowers the residual.
    let residual_of = |w: &[Complex<R>]| -> R {
        m.matvec(w)
            .iter()
            .map(|z| z.norm_sqr())
            .fold(R::zero(), |a, b| a + b)
            .sqrt()
    };
    let mut residual = residual_of(&v);
    let bordered = ComplexMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i < n && j < n {
            m[(i, j)]
        } else if i < n {
            v[i]
        } else if j < n {
            v[j].conj()
        } else {
            Complex::new(R::zero(), R::zero())
        }
    });
    let lu = LuFactors::factor(&bordered)?;
    let mut rhs = vec![Complex::new(R::zero(), R::zero()); n + 1];
    rhs[n] = Complex::new(R::one(), R::zero());
    let mut sol = lu.solve(&rhs);
    let backsub = bordered.matvec(&sol);
    let correction: Vec<Complex<R>> = (0..n + 1).map(|i| rhs[i] - backsub[i]).collect();
    let delta = lu.solve(&correction);
    for (s, d) in sol.iter_mut().zip(delta.iter()) {
        *s += d;
    }
    let mut candidate: Vec<Complex<R>> = sol[..n].to_vec();
    canonical_phase(&mut candidate);
    // A degenerate solve can collapse to zero, which canonical_phase
    // leaves untouched; a unit-norm result is part of the contract.
    let candidate_norm = candidate
        .iter()
        .map(|z| z.norm_sqr())
        .fold(R::zero(), |a, b| a + b)
        .sqrt();
    let candidate_residual = residual_of(&candidate);
    if candidate_norm > R::lit(0.5) && candidate_residual < residual {
        v = candidate;
        residual = candidate_residual;
    }

    let bound = tol * m.max_abs().max(R::one());
    if residual > bound {
        return Err(Error::NoNullVector {
            smallest: residual.to_f64().unwrap_or(f64::NAN),
            tol: bound.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(v)
}

/// Rotates a unit vector's global phase so the largest-magnitude entry is
/// real positive, then renormalizes.
fn canonical_phase<R: Real>(v: &mut [Complex<R>]) {
    let mut best = 0usize;
    let mut best_norm = R::zero();
    for (i, z) in v.iter().enumerate() {
        let nz = z.norm();
        if nz > best_norm {
            best_norm = nz;
            best = i;
        }
    }
    if best_norm == R::zero() {
        return;
    }
    let phase = v[best].unscale(best_norm).conj();
    let mut norm_sq = R::zero();
    for z in v.iter_mut() {
        *z *= phase;
        norm_sq += z.norm_sqr();
    }
    let inv = norm_sq.sqrt().recip();
    for z in v.iter_mut() {
        *z = z.scale(inv);
    }
    // The anchor entry is real by construction; zero its rounding residue.
    v[best] = Complex::new(v[best].re.abs(), R::zero());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cre;

    type M = ComplexMatrix<f64>;

    #[test]
    fn explicit_null_direction() {
        let m = M::from_rows(&[&[cre(1.0), cre(0.0)], &[cre(0.0), cre(0.0)]]);
        let v = null_vector(&m, 1e-10).unwrap();
        assert!((v[0].norm()) < 1e-12);
        assert!((v[1] - cre(1.0)).norm() < 1e-12);
    }

    #[test]
    fn phase_convention_largest_entry_real_positive() {
        // Null direction proportional to (3i, 4): convention must return
        // the version whose largest entry (second) is real positive.
        let m = M::from_rows(&[
            &[Complex::new(4.0, 0.0), Complex::new(0.0, -3.0)],
            &[cre(0.0), cre(0.0)],
        ]);
        let v = null_vector(&m, 1e-10).unwrap();
        assert!(v[1].im.abs() < 1e-14 && v[1].re > 0.0);
        assert!((v[1].re - 0.8).abs() < 1e-12);
        assert!((v[0] - Complex::new(0.0, 0.6)).norm() < 1e-12);
    }

    #[test]
    fn row_scaling_leaves_direction_invariant() {
        let base = M::from_rows(&[
            &[cre(2.0), cre(-1.0), cre(0.0)],
            &[cre(0.0), cre(1.0), cre(-1.0)],
            &[cre(2.0), cre(0.0), cre(-1.0)],
        ]); // rank 2, null direction (1,2,2)/3
        let v1 = null_vector(&base, 1e-10).unwrap();
        let mut scaled = base.clone();
        for j in 0..3 {
            scaled[(1, j)] = scaled[(1, j)].scale(735.0);
        }
        let v2 = null_vector(&scaled, 1e-10).unwrap();
        for (a, b) in v1.iter().zip(v2.iter()) {
            assert!((a - b).norm() < 1e-10);
        }
        assert!((v1[0].re - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn full_rank_is_rejected() {
        let m = M::identity(3);
        assert!(matches!(
            null_vector(&m, 1e-10),
            Err(Error::NoNullVector { .. })
        ));
    }

    #[test]
    fn two_dimensional_null_space_is_rejected() {
        let m = M::from_rows(&[
            &[cre(1.0), cre(0.0), cre(0.0)],
            &[cre(0.0), cre(0.0), cre(0.0)],
            &[cre(0.0), cre(0.0), cre(0.0)],
        ]);
        assert!(matches!(
            null_vector(&m, 1e-10),
            Err(Error::DegenerateNullSpace { .. })
        ));
    }
}
