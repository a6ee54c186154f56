//! Closed-form steady states and their eigenstate structure.
//!
//! For the two limiting cases — squeezed bath without drive, and coherent
//! drive in an ordinary vacuum — the steady state of the master equation is
//! known in closed form. These serve both as fast paths in sweeps and as
//! oracles for the numeric null-space solver.

use crate::dynamics::SystemParams;
use crate::model::DickeState;
use crate::numerics::ComplexMatrix;
use crate::scalar::{cre, czero, Real};
use crate::{Error, Result};
use num_complex::Complex;

/// Steady state of the squeezed-bath master equation (Ω = 0) with photon
/// number `n_ph` and real two-photon correlation `m_corr`.
///
/// Populations and the two-photon coherence, with the shorthand
/// b = 3N² + 3N + 1 − 3M² (strictly positive under the quantum bound):
///
/// ```text
/// ρ_ee = [N²(2N+1) − (2N−1)M²] / [(2N+1) b]
/// ρ_ss = [N(N+1) − M²] / b
/// ρ_eg = M / [(2N+1) b]
/// ```
///
/// A negative `m_corr` encodes the squeezing phase φ_s = π and carries its
/// sign into ρ_eg; all other coherences vanish.
pub fn steady_squeezed<R: Real>(n_ph: R, m_corr: R) -> Result<DickeState<R>> {
    // Reuse the parameter validation (Ω = 0, Γ = 1 implied here).
    let p = SystemParams::new(R::zero(), R::one(), n_ph, cre(m_corr))?;
    let n = p.n_ph;
    let m2 = m_corr * m_corr;
    let two_n1 = R::lit(2.0) * n + R::one();
    let three = R::lit(3.0);
    let b = three * n * n + three * n + R::one() - three * m2;

    let ee = (n * n * two_n1 - (two_n1 - R::lit(2.0)) * m2) / (two_n1 * b);
    let ss = (n * (n + R::one()) - m2) / b;
    let eg = m_corr / (two_n1 * b);
    let gg = R::one() - ee - ss;
    DickeState::from_real_elements(ee, ss, gg, eg, R::zero(), R::zero())
}

/// Steady state of the coherently driven pair in an ordinary vacuum
/// (N = M = 0), in units of Γ = 1, with d = 3Ω⁴ + 4Ω² + 4:
///
/// ```text
/// ρ_ee = Ω⁴/d          ρ_es = √2 Ω³/d
/// ρ_ss = (Ω⁴ + 2Ω²)/d   ρ_sg = √2 Ω(Ω² + 2)/d
/// ρ_eg = 2Ω²/d
/// ```
pub fn steady_coherent<R: Real>(omega: R) -> Result<DickeState<R>> {
    if !(omega.is_finite() && omega >= R::zero()) {
        return Err(Error::ParamBounds(format!(
            "rabi frequency must be finite and >= 0, got {omega}"
        )));
    }
    let two = R::lit(2.0);
    let four = R::lit(4.0);
    let om2 = omega * omega;
    let om4 = om2 * om2;
    let d = R::lit(3.0) * om4 + four * om2 + four;
    if !d.is_finite() {
        return Err(Error::ParamBounds(format!(
            "rabi frequency too large for the closed form: {omega}"
        )));
    }
    let s2 = R::SQRT_2();

    let ee = om4 / d;
    let ss = (om4 + two * om2) / d;
    let eg = two * om2 / d;
    let es = s2 * omega * om2 / d;
    let sg = s2 * omega * (om2 + two) / d;
    let gg = R::one() - ee - ss;
    DickeState::from_real_elements(ee, ss, gg, eg, es, sg)
}

/// Spectral decomposition of a state whose only coherence is the two-photon
/// one: two entangled superpositions of |g⟩ and |e⟩ plus a residual |s⟩
/// population.
///
/// State vectors live on span{|g⟩, |e⟩} and are stored as
/// `[g-amplitude, e-amplitude]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<R> {
    pub psi_plus: [Complex<R>; 2],
    pub psi_minus: [Complex<R>; 2],
    pub pi_plus: R,
    pub pi_minus: R,
    pub residual_population: R,
}

impl<R: Real> EigenDecomposition<R> {
    /// Rebuilds the density matrix
    /// Π₊|Ψ₊⟩⟨Ψ₊| + Π₋|Ψ₋⟩⟨Ψ₋| + ρ_ss|s⟩⟨s| in the collective basis.
    pub fn reconstruct(&self) -> ComplexMatrix<R> {
        let lift = |v: &[Complex<R>; 2]| [v[1], czero(), v[0]]; // (e, s, g)
        let vp = lift(&self.psi_plus);
        let vm = lift(&self.psi_minus);
        let mut m = ComplexMatrix::outer(&vp, &vp).scaled(cre(self.pi_plus));
        m.add_scaled(&ComplexMatrix::outer(&vm, &vm), cre(self.pi_minus));
        m[(1, 1)] += cre(self.residual_population);
        m
    }
}

/// Diagonalizes the {|g⟩, |e⟩} block of a state with ρ_es = ρ_sg = 0.
///
/// The eigenvalues are
/// Π± = ½(ρ_gg + ρ_ee) ± ½√((ρ_gg − ρ_ee)² + 4|ρ_eg|²)
/// with eigenvectors
/// |Ψ₊⟩ ∝ (Π₊ − ρ_ee)|g⟩ + ρ_eg|e⟩ and |Ψ₋⟩ ∝ ρ_ge|g⟩ + (Π₋ − ρ_gg)|e⟩,
/// normalized directly rather than through closed-form constants (safer as
/// Π₋ → 0). When ρ_eg vanishes the block is already diagonal and the
/// eigenvectors are fixed to |g⟩ and |e⟩ deterministically, preferring |g⟩
/// for Π₊ on exact degeneracy.
pub fn entangled_eigenstates<R: Real>(rho: &DickeState<R>) -> Result<EigenDecomposition<R>> {
    let tol = R::tol_state();
    let es = rho.es().norm();
    let sg = rho.sg().norm();
    if es > tol || sg > tol {
        return Err(Error::NotApplicable(format!(
            "one-photon coherences present (|rho_es| = {es}, |rho_sg| = {sg}); \
             this decomposition needs rho_es = rho_sg = 0 — use the generic \
             hermitian eigensolver instead"
        )));
    }

    let ee = rho.ee();
    let gg = rho.gg();
    let ss = rho.ss();
    let eg = rho.eg();

    let half = R::lit(0.5);
    let mean = half * (gg + ee);
    let gap = half * ((gg - ee) * (gg - ee) + R::lit(4.0) * eg.norm_sqr()).sqrt();
    let pi_plus = mean + gap;
    let mut pi_minus = mean - gap;
    if pi_minus < R::zero() {
        if pi_minus < -tol {
            return Err(Error::StateInvariant {
                check: "entangled-state population positivity",
                value: pi_minus.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        pi_minus = R::zero();
    }

    let (psi_plus, psi_minus) = if eg.norm() <= tol {
        if gg >= ee {
            ([cre(R::one()), czero()], [czero(), cre(R::one())])
        } else {
            ([czero(), cre(R::one())], [cre(R::one()), czero()])
        }
    } else {
        let normalize = |g_amp: Complex<R>, e_amp: Complex<R>| {
            let n = (g_amp.norm_sqr() + e_amp.norm_sqr()).sqrt();
            [g_amp.scale(n.recip()), e_amp.scale(n.recip())]
        };
        (
            normalize(cre(pi_plus - ee), eg),
            normalize(eg.conj(), cre(pi_minus - gg)),
        )
    };

    Ok(EigenDecomposition {
        psi_plus,
        psi_minus,
        pi_plus,
        pi_minus,
        residual_population: ss,
    })
}
