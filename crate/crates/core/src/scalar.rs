//! Floating-point scalar abstraction.
//!
//! All numeric code is generic over [`Real`], which bundles the `num-traits`
//! capabilities the algorithms rely on and adds precision-dependent tolerance
//! knobs. The `f64` instantiation carries the tolerances the rest of the crate
//! documents; the `f32` instantiation loosens them to levels single precision
//! can actually meet and exists mainly to keep the code honest about what is
//! precision-dependent.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};

/// Scalar type the toolkit is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Tolerance for state invariants: hermiticity, unit trace, positivity.
    fn tol_state() -> Self;

    /// Tolerance for solver residuals: null vectors, eigen reconstruction,
    /// analytic-vs-numeric agreement.
    fn tol_solve() -> Self;

    /// Tolerance for cross-validation between independent computation routes
    /// (closed-form vs numeric spectra, integrator drift).
    fn tol_loose() -> Self;

    /// Tolerance on ⟨S_y⟩ for the real-coherence phase convention.
    fn tol_phase() -> Self;

    /// Converts an `f64` literal; panics only on values a scalar type cannot
    /// represent at all, which never happens for the constants in this crate.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Complex number with this scalar as its component type.
    fn complex(re: Self, im: Self) -> Complex<Self> {
        Complex::new(re, im)
    }
}

impl Real for f64 {
    fn tol_state() -> Self {
        1e-12
    }
    fn tol_solve() -> Self {
        1e-10
    }
    fn tol_loose() -> Self {
        1e-9
    }
    fn tol_phase() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn tol_state() -> Self {
        1e-5
    }
    fn tol_solve() -> Self {
        1e-4
    }
    fn tol_loose() -> Self {
        1e-3
    }
    fn tol_phase() -> Self {
        1e-3
    }
}

/// Zero of the complex type over `R`.
pub fn czero<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::zero())
}

/// One of the complex type over `R`.
pub fn cone<R: Real>() -> Complex<R> {
    Complex::new(R::one(), R::zero())
}

/// Imaginary unit of the complex type over `R`.
pub fn ci<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::one())
}

/// Real number lifted into the complex type over `R`.
pub fn cre<R: Real>(re: R) -> Complex<R> {
    Complex::new(re, R::zero())
}
