//! Roots of a monic cubic with real coefficients.
//!
//! The roots are computed as eigenvalues of the 3×3 companion matrix using a
//! shifted QR iteration rather than Cardano's formula: the explicit radical
//! expressions cancel catastrophically near repeated roots, while the
//! companion route degrades gracefully. Each eigenvalue is then polished by
//! a couple of Newton steps on the polynomial itself.

use crate::scalar::{cre, czero, Real};
use num_complex::Complex;

/// Coefficients of the monic cubic `p³ + a2·p² + a1·p + a0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicCoefficients<R> {
    pub a2: R,
    pub a1: R,
    pub a0: R,
}

/// All three roots of the monic cubic, sorted by real part (then imaginary
/// part). Roots whose imaginary part is below `R::tol_loose()` are reported
/// with an imaginary part of exactly zero, so real spectra come out real.
pub fn cubic_roots<R: Real>(c: &CubicCoefficients<R>) -> [Complex<R>; 3] {
    assert!(
        c.a2.is_finite() && c.a1.is_finite() && c.a0.is_finite(),
        "non-finite cubic coefficients"
    );
    let mut roots = if c.a0 == R::zero() {
        // Exact zero constant term: deflate the root at the origin; the
        // companion iteration handles the (frequent) nilpotent-like cases
        // poorly, and this branch keeps p(p² + a2·p + a1) exact.
        let (r1, r2) = quadratic_roots(cre(c.a2), cre(c.a1));
        [czero(), r1, r2]
    } else {
        companion_eigenvalues(c)
    };
    for r in roots.iter_mut() {
        *r = polish(c, *r);
        if r.im.abs() < R::tol_loose() {
            *r = cre(r.re);
        }
    }
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite roots")
    });
    roots
}

/// Eigenvalues of the companion matrix of the cubic via explicit QR steps
/// with Wilkinson shifts. The matrix is 3×3 upper Hessenberg throughout; one
/// subdiagonal deflation reduces the problem to a closed-form 2×2 block.
fn companion_eigenvalues<R: Real>(c: &CubicCoefficients<R>) -> [Complex<R>; 3] {
    let mut h = [
        [czero(), czero(), cre(-c.a0)],
        [cre(R::one()), czero(), cre(-c.a1)],
        [czero(), cre(R::one()), cre(-c.a2)],
    ];
    let eps = R::epsilon();
    let negligible = |sub: Complex<R>, d1: Complex<R>, d2: Complex<R>| -> bool {
        sub.norm() <= eps * (d1.norm() + d2.norm()).max(R::lit(1e-300))
    };

    for iter in 0..90usize {
        if negligible(h[2][1], h[1][1], h[2][2]) {
            let (r1, r2) = block2_eigenvalues(h[0][0], h[0][1], h[1][0], h[1][1]);
            return [r1, r2, h[2][2]];
        }
        if negligible(h[1][0], h[0][0], h[1][1]) {
            let (r1, r2) = block2_eigenvalues(h[1][1], h[1][2], h[2][1], h[2][2]);
            return [h[0][0], r1, r2];
        }
        // Wilkinson shift: eigenvalue of the trailing 2×2 closest to the
        // bottom-right entry; an exceptional shift every tenth iteration
        // breaks the rare symmetric limit cycles.
        let sigma = if iter % 10 == 9 {
            h[2][2] + cre(h[2][1].norm() * R::lit(0.75))
        } else {
            let (e1, e2) = block2_eigenvalues(h[1][1], h[1][2], h[2][1], h[2][2]);
            if (e1 - h[2][2]).norm() <= (e2 - h[2][2]).norm() {
                e1
            } else {
                e2
            }
        };
        qr_step(&mut h, sigma);
    }
    // The shifted iteration converges in a handful of steps for every cubic
    // arising here; if the cap is ever hit the Newton polish still refines
    // the diagonal estimates below.
    [h[0][0], h[1][1], h[2][2]]
}

/// One explicit QR step `H ← R Q + σI` where `H − σI = QR`, implemented with
/// two complex Givens rotations (the matrix is Hessenberg).
fn qr_step<R: Real>(h: &mut [[Complex<R>; 3]; 3], sigma: Complex<R>) {
    for d in h.iter_mut().enumerate().map(|(i, row)| &mut row[i]) {
        *d -= sigma;
    }
    let g1 = givens(h[0][0], h[1][0]);
    rotate_rows(h, 0, 1, g1);
    let g2 = givens(h[1][1], h[2][1]);
    rotate_rows(h, 1, 2, g2);
    rotate_cols(h, 0, 1, g1);
    rotate_cols(h, 1, 2, g2);
    for d in h.iter_mut().enumerate().map(|(i, row)| &mut row[i]) {
        *d += sigma;
    }
    // Entries below the first subdiagonal are zero in exact arithmetic.
    h[2][0] = czero();
}

/// Complex Givens pair (c real, s complex) with
/// `[[c, s], [-conj(s), c]] · [f, g]ᵀ = [r, 0]ᵀ`.
fn givens<R: Real>(f: Complex<R>, g: Complex<R>) -> (R, Complex<R>) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == R::zero() {
        return (R::one(), czero());
    }
    let r = (fn_ * fn_ + gn * gn).sqrt();
    if fn_ == R::zero() {
        (R::zero(), g.conj().unscale(gn))
    } else {
        (fn_ / r, f.unscale(fn_) * g.conj().unscale(r))
    }
}

#[allow(clippy::needless_range_loop)]
fn rotate_rows<R: Real>(h: &mut [[Complex<R>; 3]; 3], i: usize, j: usize, (c, s): (R, Complex<R>)) {
    for k in 0..3 {
        let hi = h[i][k];
        let hj = h[j][k];
        h[i][k] = hi.scale(c) + s * hj;
        h[j][k] = hj.scale(c) - s.conj() * hi;
    }
}

fn rotate_cols<R: Real>(h: &mut [[Complex<R>; 3]; 3], i: usize, j: usize, (c, s): (R, Complex<R>)) {
    for row in h.iter_mut() {
        let hi = row[i];
        let hj = row[j];
        row[i] = hi.scale(c) + s.conj() * hj;
        row[j] = hj.scale(c) - s * hi;
    }
}

/// Eigenvalues of a complex 2×2 `[[a, b], [c, d]]` via the quadratic formula
/// on its characteristic polynomial.
fn block2_eigenvalues<R: Real>(
    a: Complex<R>,
    b: Complex<R>,
    c: Complex<R>,
    d: Complex<R>,
) -> (Complex<R>, Complex<R>) {
    quadratic_roots(-(a + d), a * d - b * c)
}

/// Roots of the monic complex quadratic `z² + b·z + c`, using the
/// cancellation-free pairing `r1·r2 = c`.
fn quadratic_roots<R: Real>(b: Complex<R>, c: Complex<R>) -> (Complex<R>, Complex<R>) {
    if c == czero() {
        return (czero(), -b);
    }
    let disc = (b * b - c.scale(R::lit(4.0))).sqrt();
    let plus = b + disc;
    let minus = b - disc;
    let q = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    }
    .scale(-R::lit(0.5));
    (q, c / q)
}

/// A few Newton steps on the cubic; near-exact inputs converge immediately
/// and the step is skipped when the derivative underflows (repeated roots,
/// already at full accuracy from the eigenvalue route).
fn polish<R: Real>(c: &CubicCoefficients<R>, mut z: Complex<R>) -> Complex<R> {
    for _ in 0..3 {
        let p = ((z + cre(c.a2)) * z + cre(c.a1)) * z + cre(c.a0);
        let dp = (z.scale(R::lit(3.0)) + cre(R::lit(2.0) * c.a2)) * z + cre(c.a1);
        if dp.norm() <= R::epsilon() * (R::one() + z.norm_sqr()) {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= R::epsilon() * (R::one() + z.norm()) {
            break;
        }
    }
    z
}
