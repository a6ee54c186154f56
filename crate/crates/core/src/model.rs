//! The two-atom state spaces and the operators living on them.
//!
//! Two two-level atoms within a wavelength couple to the field only through
//! their collective (Dicke) states. The master equation conserves total spin,
//! so the antisymmetric singlet never populates and the system lives in the
//! triplet {|e⟩, |s⟩, |g⟩} — doubly excited, symmetric single-excitation, and
//! ground. Basis order is (e, s, g), descending in energy.
//!
//! Entanglement measures need the two-qubit product basis
//! {|e₁e₂⟩, |e₁g₂⟩, |g₁e₂⟩, |g₁g₂⟩}; [`dicke_to_product`] performs the exact
//! embedding |s⟩ ↦ (|e₁g₂⟩ + |g₁e₂⟩)/√2, an isometry on the symmetric
//! subspace (it preserves the spectrum up to one extra zero eigenvalue).

use crate::numerics::{hermitian_eigen, ComplexMatrix};
use crate::scalar::{cre, czero, Real};
use crate::{Error, Result};
use num_complex::Complex;

/// Basis index of |e⟩ (both atoms excited).
pub const E: usize = 0;
/// Basis index of |s⟩ (symmetric single excitation, maximally entangled).
pub const S: usize = 1;
/// Basis index of |g⟩ (both atoms in the ground state).
pub const G: usize = 2;

/// Density matrix of the atom pair in the collective basis.
///
/// Wraps a validated 3×3 complex matrix: Hermitian, unit trace, positive
/// semidefinite, each within `R::tol_state()`.
#[derive(Clone, Debug, PartialEq)]
pub struct DickeState<R: Real> {
    m: ComplexMatrix<R>,
}

impl<R: Real> DickeState<R> {
    /// Validates and wraps a 3×3 density matrix.
    pub fn from_matrix(m: ComplexMatrix<R>) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::DimensionMismatch {
                expected: "3x3".into(),
                found: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let tol = R::tol_state();
        let (dev, row, col) = m.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian {
                row,
                col,
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tr = m.trace();
        let tr_err = (tr - cre(R::one())).norm();
        if tr_err > tol {
            return Err(Error::StateInvariant {
                check: "unit trace",
                value: tr_err.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let state = Self { m };
        let min = state.min_eigenvalue()?;
        if min < -tol {
            return Err(Error::StateInvariant {
                check: "positive semidefiniteness",
                value: min.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(state)
    }

    /// Builds the real-coherence state used throughout: populations
    /// (ee, ss, gg) and real coherences (eg, es, sg), mirrored Hermitian.
    pub fn from_real_elements(ee: R, ss: R, gg: R, eg: R, es: R, sg: R) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(E, E)] = cre(ee);
        m[(S, S)] = cre(ss);
        m[(G, G)] = cre(gg);
        m[(E, G)] = cre(eg);
        m[(G, E)] = cre(eg);
        m[(E, S)] = cre(es);
        m[(S, E)] = cre(es);
        m[(S, G)] = cre(sg);
        m[(G, S)] = cre(sg);
        Self::from_matrix(m)
    }

    /// Pure ground state |g⟩⟨g|.
    pub fn ground() -> Self {
        Self::pure_basis(G)
    }

    /// Pure doubly excited state |e⟩⟨e|.
    pub fn excited() -> Self {
        Self::pure_basis(E)
    }

    /// Pure symmetric state |s⟩⟨s|.
    pub fn symmetric() -> Self {
        Self::pure_basis(S)
    }

    fn pure_basis(i: usize) -> Self {
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(i, i)] = cre(R::one());
        Self { m }
    }

    pub fn matrix(&self) -> &ComplexMatrix<R> {
        &self.m
    }

    pub fn ee(&self) -> R {
        self.m[(E, E)].re
    }

    pub fn ss(&self) -> R {
        self.m[(S, S)].re
    }

    pub fn gg(&self) -> R {
        self.m[(G, G)].re
    }

    pub fn eg(&self) -> Complex<R> {
        self.m[(E, G)]
    }

    pub fn es(&self) -> Complex<R> {
        self.m[(E, S)]
    }

    pub fn sg(&self) -> Complex<R> {
        self.m[(S, G)]
    }

    /// Smallest eigenvalue (for positivity diagnostics).
    pub fn min_eigenvalue(&self) -> Result<R> {
        let (vals, _) = hermitian_eigen(&self.m.hermitian_part())?;
        Ok(vals[0])
    }

    /// Purity Tr ρ².
    pub fn purity(&self) -> R {
        (&self.m * &self.m).trace().re
    }
}

/// Density matrix of the atom pair in the two-qubit product basis
/// {|e₁e₂⟩, |e₁g₂⟩, |g₁e₂⟩, |g₁g₂⟩}.
///
/// Valid states are Hermitian, unit-trace, PSD, and supported on the
/// symmetric subspace: the singlet direction (|e₁g₂⟩ − |g₁e₂⟩)/√2 carries
/// neither population nor coherence.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState<R: Real> {
    m: ComplexMatrix<R>,
}

impl<R: Real> ProductState<R> {
    /// Validates and wraps a 4×4 density matrix.
    pub fn from_matrix(m: ComplexMatrix<R>) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::DimensionMismatch {
                expected: "4x4".into(),
                found: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let tol = R::tol_state();
        let (dev, row, col) = m.hermiticity_deviation();
        if dev > tol {
            return Err(Error::NotHermitian {
                row,
                col,
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tr_err = (m.trace() - cre(R::one())).norm();
        if tr_err > tol {
            return Err(Error::StateInvariant {
                check: "unit trace",
                value: tr_err.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        // Singlet support: ‖ρ · a‖ with a = (|e₁g₂⟩ − |g₁e₂⟩)/√2 covers the
        // population and every coherence against the symmetric subspace.
        let inv_sqrt2 = R::FRAC_1_SQRT_2();
        let singlet = [czero(), cre(inv_sqrt2), cre(-inv_sqrt2), czero()];
        let overlap = m
            .matvec(&singlet)
            .iter()
            .map(|z| z.norm())
            .fold(R::zero(), |a, b| a.max(b));
        if overlap > tol {
            return Err(Error::StateInvariant {
                check: "symmetric-subspace support (singlet component)",
                value: overlap.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (vals, _) = hermitian_eigen(&m.hermitian_part())?;
        if vals[0] < -tol {
            return Err(Error::StateInvariant {
                check: "positive semidefiniteness",
                value: vals[0].to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &ComplexMatrix<R> {
        &self.m
    }
}

/// The collective spin-1 operators on the Dicke basis.
///
/// `S⁺ = √2 (|e⟩⟨s| + |s⟩⟨g|)` and its algebra: `[S⁺, S⁻] = 2 S_z`,
/// `[S_z, S±] = ±S±`, and `S_x² + S_y² + S_z² = 2·1` (total spin S = 1).
#[derive(Clone, Debug)]
pub struct CollectiveOperators<R: Real> {
    pub s_plus: ComplexMatrix<R>,
    pub s_minus: ComplexMatrix<R>,
    pub s_x: ComplexMatrix<R>,
    pub s_y: ComplexMatrix<R>,
    pub s_z: ComplexMatrix<R>,
}

/// Constructs the collective operators; the matrix elements are forced by
/// the spin-1 ladder algebra.
pub fn collective_operators<R: Real>() -> CollectiveOperators<R> {
    let sqrt2 = R::SQRT_2();
    let mut s_plus = ComplexMatrix::zeros(3, 3);
    s_plus[(E, S)] = cre(sqrt2);
    s_plus[(S, G)] = cre(sqrt2);
    let s_minus = s_plus.adjoint();
    let half = R::lit(0.5);
    let s_x = (&s_plus + &s_minus).scaled(cre(half));
    // S_y = (S⁺ − S⁻) / (2i) = −(i/2) (S⁺ − S⁻)
    let s_y = (&s_plus - &s_minus).scaled(Complex::new(R::zero(), -half));
    let mut s_z = ComplexMatrix::zeros(3, 3);
    s_z[(E, E)] = cre(R::one());
    s_z[(G, G)] = cre(-R::one());
    CollectiveOperators {
        s_plus,
        s_minus,
        s_x,
        s_y,
        s_z,
    }
}

/// Expectation value Tr(op·ρ).
pub fn expectation<R: Real>(op: &ComplexMatrix<R>, rho: &DickeState<R>) -> Result<Complex<R>> {
    if op.rows() != 3 || op.cols() != 3 {
        return Err(Error::DimensionMismatch {
            expected: "3x3".into(),
            found: format!("{}x{}", op.rows(), op.cols()),
        });
    }
    Ok((op * rho.matrix()).trace())
}

/// Exact embedding of the collective-basis state into the product basis:
/// |e⟩ ↦ |e₁e₂⟩, |s⟩ ↦ (|e₁g₂⟩ + |g₁e₂⟩)/√2, |g⟩ ↦ |g₁g₂⟩.
///
/// The ss population splits exactly in half over the central block and the
/// s-coherences pick up 1/√2, so the trace is preserved exactly.
pub fn dicke_to_product<R: Real>(rho: &DickeState<R>) -> Result<ProductState<R>> {
    let r = rho.matrix();
    let half = R::lit(0.5);
    let k = cre(R::FRAC_1_SQRT_2());
    let ss_half = r[(S, S)].scale(half);
    let es = r[(E, S)] * k;
    let se = r[(S, E)] * k;
    let sg = r[(S, G)] * k;
    let gs = r[(G, S)] * k;

    let mut p = ComplexMatrix::zeros(4, 4);
    p[(0, 0)] = r[(E, E)];
    p[(0, 1)] = es;
    p[(0, 2)] = es;
    p[(0, 3)] = r[(E, G)];
    p[(1, 0)] = se;
    p[(1, 1)] = ss_half;
    p[(1, 2)] = ss_half;
    p[(1, 3)] = sg;
    p[(2, 0)] = se;
    p[(2, 1)] = ss_half;
    p[(2, 2)] = ss_half;
    p[(2, 3)] = sg;
    p[(3, 0)] = r[(G, E)];
    p[(3, 1)] = gs;
    p[(3, 2)] = gs;
    p[(3, 3)] = r[(G, G)];
    ProductState::from_matrix(p)
}
