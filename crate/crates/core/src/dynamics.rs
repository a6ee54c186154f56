//! The master equation of the driven two-atom system: Liouvillian
//! construction, steady states, and time integration.
//!
//! The equation of motion combines a resonant coherent drive of Rabi
//! frequency Ω with collective emission into a broadband squeezed vacuum
//! characterized by the photon number N and the two-photon correlation M
//! (all rates in units of the collective decay rate Γ):
//!
//! ```text
//! dρ/dt =  (Ω/2) [S⁺ − S⁻, ρ]
//!        − (Γ/2)(N+1) (S⁺S⁻ρ + ρS⁺S⁻ − 2 S⁻ρS⁺)
//!        − (Γ/2) N    (S⁻S⁺ρ + ρS⁻S⁺ − 2 S⁺ρS⁻)
//!        + (Γ/2) M    (S⁺S⁺ρ + ρS⁺S⁺ − 2 S⁺ρS⁺)
//!        + (Γ/2) M*   (S⁻S⁻ρ + ρS⁻S⁻ − 2 S⁻ρS⁻)
//! ```
//!
//! Detunings are fixed at zero. The superoperator acts on column-stacked
//! density matrices via vec(AρB) = (Bᵀ ⊗ A) vec(ρ), giving a 9×9 matrix.

use crate::model::collective_operators;
use crate::model::DickeState;
use crate::numerics::{hermitian_eigen, null_vector, ComplexMatrix};
use crate::scalar::{cre, czero, Real};
use crate::{Error, Result};
use num_complex::Complex;

/// Physical parameters of the master equation.
///
/// All rates are in units of `gamma`; `gamma` itself only sets the time
/// scale. The two-photon correlation `m_corr` may be complex
/// (M = |M| e^{iφ_s}); with the real convention used throughout the
/// analysis, its sign encodes the squeezing phase φ_s ∈ {0, π}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams<R> {
    pub omega: R,
    pub gamma: R,
    pub n_ph: R,
    pub m_corr: Complex<R>,
}

impl<R: Real> SystemParams<R> {
    /// Validates against the quantum bound |M|² ≤ N(N+1).
    ///
    /// The bound carries a relative slack of `tol_state` so that the
    /// ideal-squeezing value M = √(N(N+1)) remains admissible after the
    /// rounding in sqrt-then-square.
    pub fn new(omega: R, gamma: R, n_ph: R, m_corr: Complex<R>) -> Result<Self> {
        if !(omega.is_finite() && omega >= R::zero()) {
            return Err(Error::ParamBounds(format!(
                "rabi frequency must be finite and >= 0, got {omega}"
            )));
        }
        if !(gamma.is_finite() && gamma > R::zero()) {
            return Err(Error::ParamBounds(format!(
                "decay rate must be finite and > 0, got {gamma}"
            )));
        }
        if !(n_ph.is_finite() && n_ph >= R::zero()) {
            return Err(Error::ParamBounds(format!(
                "photon number must be finite and >= 0, got {n_ph}"
            )));
        }
        let bound = n_ph * (n_ph + R::one());
        let slack = R::tol_state() * (R::one() + bound);
        if !m_corr.re.is_finite() || !m_corr.im.is_finite() || m_corr.norm_sqr() > bound + slack {
            return Err(Error::ParamBounds(format!(
                "two-photon correlation violates |M|^2 <= N(N+1): |M|^2 = {}, N(N+1) = {}",
                m_corr.norm_sqr(),
                bound
            )));
        }
        Ok(Self {
            omega,
            gamma,
            n_ph,
            m_corr,
        })
    }

    /// Like [`SystemParams::new`], but additionally enforces the classical
    /// correlation bound |M| ≤ N.
    pub fn new_classical(omega: R, gamma: R, n_ph: R, m_corr: Complex<R>) -> Result<Self> {
        let p = Self::new(omega, gamma, n_ph, m_corr)?;
        let slack = R::tol_state() * (R::one() + p.n_ph);
        if m_corr.norm() > p.n_ph + slack {
            return Err(Error::ParamBounds(format!(
                "classical correlations require |M| <= N: |M| = {}, N = {}",
                m_corr.norm(),
                p.n_ph
            )));
        }
        Ok(p)
    }
}

/// The 9×9 superoperator generating the master equation on column-stacked
/// density matrices.
///
/// Trace preservation holds by construction: the vectorized identity is a
/// left null vector. All eigenvalues have non-positive real part
/// (dissipativity), which makes long-time propagation contractive.
#[derive(Clone, Debug)]
pub struct Liouvillian<R: Real> {
    matrix: ComplexMatrix<R>,
}

impl<R: Real> Liouvillian<R> {
    pub fn matrix(&self) -> &ComplexMatrix<R> {
        &self.matrix
    }

    /// Applies the generator to a density matrix: devec(L · vec(ρ)).
    pub fn apply(&self, rho: &ComplexMatrix<R>) -> ComplexMatrix<R> {
        ComplexMatrix::devectorize(&self.matrix.matvec(&rho.vectorize()), 3)
    }
}

/// Left-multiplication superoperator: vec(Aρ) = (1 ⊗ A) vec(ρ).
fn lmul<R: Real>(a: &ComplexMatrix<R>) -> ComplexMatrix<R> {
    ComplexMatrix::identity(3).kron(a)
}

/// Right-multiplication superoperator: vec(ρB) = (Bᵀ ⊗ 1) vec(ρ).
fn rmul<R: Real>(b: &ComplexMatrix<R>) -> ComplexMatrix<R> {
    b.transpose().kron(&ComplexMatrix::identity(3))
}

/// Sandwich superoperator: vec(AρB) = (Bᵀ ⊗ A) vec(ρ).
fn sandwich<R: Real>(a: &ComplexMatrix<R>, b: &ComplexMatrix<R>) -> ComplexMatrix<R> {
    b.transpose().kron(a)
}

/// Assembles the master-equation generator for the given parameters.
pub fn build_liouvillian<R: Real>(p: &SystemParams<R>) -> Liouvillian<R> {
    let ops = collective_operators::<R>();
    let half = R::lit(0.5);
    let two = cre(R::lit(2.0));

    let mut l = ComplexMatrix::zeros(9, 9);

    // Coherent drive: (Ω/2)[S⁺ − S⁻, ρ].
    let k = &ops.s_plus - &ops.s_minus;
    let mut comm = lmul(&k);
    comm.add_scaled(&rmul(&k), cre(-R::one()));
    l.add_scaled(&comm, cre(p.omega * half));

    // Anticommutator-minus-sandwich block shared by all four dissipators:
    // AB ρ + ρ AB − 2 A ρ B for jump pairs (A, B).
    let dissipator = |a: &ComplexMatrix<R>, b: &ComplexMatrix<R>| {
        let ab = a * b;
        let mut d = lmul(&ab);
        d.add_scaled(&rmul(&ab), cre(R::one()));
        d.add_scaled(&sandwich(b, a), -two);
        d
    };

    // −(Γ/2)(N+1): decay channel S⁺S⁻ρ + ρS⁺S⁻ − 2S⁻ρS⁺.
    let g_half = p.gamma * half;
    l.add_scaled(
        &dissipator(&ops.s_plus, &ops.s_minus),
        cre(-g_half * (p.n_ph + R::one())),
    );
    // −(Γ/2)N: pumping channel S⁻S⁺ρ + ρS⁻S⁺ − 2S⁺ρS⁻.
    l.add_scaled(
        &dissipator(&ops.s_minus, &ops.s_plus),
        cre(-g_half * p.n_ph),
    );
    // +(Γ/2)M: two-photon channel S⁺S⁺ρ + ρS⁺S⁺ − 2S⁺ρS⁺.
    l.add_scaled(
        &dissipator(&ops.s_plus, &ops.s_plus),
        p.m_corr.scale(g_half),
    );
    // +(Γ/2)M*: conjugate channel S⁻S⁻ρ + ρS⁻S⁻ − 2S⁻ρS⁻.
    l.add_scaled(
        &dissipator(&ops.s_minus, &ops.s_minus),
        p.m_corr.conj().scale(g_half),
    );

    Liouvillian { matrix: l }
}

/// Solves L·vec(ρ) = 0 for the unique steady state.
///
/// The raw null vector is Hermitized and trace-normalized, then validated
/// as a density matrix; the final residual ‖L·vec(ρ)‖ must stay below the
/// solve tolerance (scaled by the magnitude of L).
pub fn steady_state<R: Real>(l: &Liouvillian<R>) -> Result<DickeState<R>> {
    let v = null_vector(l.matrix(), R::tol_solve())?;
    let raw = ComplexMatrix::devectorize(&v, 3);
    let h = raw.hermitian_part();
    let tr = h.trace().re;
    if tr.abs() < R::tol_loose() {
        return Err(Error::Inconsistency {
            check: "steady-state null vector has (near-)zero trace".into(),
            residual: tr.abs().to_f64().unwrap_or(f64::NAN),
            tol: R::tol_loose().to_f64().unwrap_or(f64::NAN),
        });
    }
    let rho = h.scaled(cre(tr.recip()));

    let scale = l.matrix().max_abs().max(R::one());
    let residual = l
        .matrix()
        .matvec(&rho.vectorize())
        .iter()
        .map(|z| z.norm_sqr())
        .fold(R::zero(), |a, b| a + b)
        .sqrt();
    if residual > R::tol_solve() * scale {
        return Err(Error::Inconsistency {
            check: "steady-state residual ||L vec(rho)||".into(),
            residual: residual.to_f64().unwrap_or(f64::NAN),
            tol: (R::tol_solve() * scale).to_f64().unwrap_or(f64::NAN),
        });
    }
    DickeState::from_matrix(rho)
}

/// Integration-drift tolerances, expressed relative to the state tolerance
/// so they track the scalar type's precision (for f64: trace 1e-9,
/// hermiticity 1e-10, positivity 1e-9).
fn drift_tols<R: Real>() -> (R, R, R) {
    let base = R::tol_state();
    let kilo = R::lit(1e3);
    let hecto = R::lit(1e2);
    (base * kilo, base * hecto, base * kilo)
}

/// Integrates dρ/dt = L·ρ with classical fixed-step 4th-order Runge–Kutta.
///
/// `t_final` and `dt` are in units of 1/Γ; `dt = None` selects the default
/// step 1e-3/Γ. The integrator monitors trace drift, Hermiticity drift, and
/// (periodically) positivity; drift beyond tolerance aborts with an error
/// suggesting a smaller step instead of silently renormalizing.
pub fn propagate<R: Real>(
    rho0: &DickeState<R>,
    p: &SystemParams<R>,
    t_final: R,
    dt: Option<R>,
) -> Result<DickeState<R>> {
    if !(t_final.is_finite() && t_final >= R::zero()) {
        return Err(Error::ParamBounds(format!(
            "final time must be finite and >= 0, got {t_final}"
        )));
    }
    let dt = dt.unwrap_or_else(|| R::lit(1e-3) / p.gamma);
    if !(dt.is_finite() && dt > R::zero()) {
        return Err(Error::ParamBounds(format!(
            "time step must be finite and > 0, got {dt}"
        )));
    }
    let (trace_tol, herm_tol, pos_tol) = drift_tols::<R>();

    let l = build_liouvillian(p);
    let lm = l.matrix();
    let mut v = rho0.matrix().vectorize();
    let n = v.len();

    let axpy = |y: &mut [Complex<R>], a: R, x: &[Complex<R>]| {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += xi.scale(a);
        }
    };

    let mut t = R::zero();
    let mut step: u64 = 0;
    while t < t_final {
        let h = (t_final - t).min(dt);

        let k1 = lm.matvec(&v);
        let mut w = v.clone();
        axpy(&mut w, h * R::lit(0.5), &k1);
        let k2 = lm.matvec(&w);
        w.copy_from_slice(&v);
        axpy(&mut w, h * R::lit(0.5), &k2);
        let k3 = lm.matvec(&w);
        w.copy_from_slice(&v);
        axpy(&mut w, h, &k3);
        let k4 = lm.matvec(&w);

        let sixth = h / R::lit(6.0);
        for i in 0..n {
            v[i] += (k1[i] + (k2[i] + k3[i]).scale(R::lit(2.0)) + k4[i]).scale(sixth);
        }
        t += h;
        step += 1;

        // Trace and magnitude guards every step (cheap on 9 entries).
        let mut tr = czero::<R>();
        let mut vmax = R::zero();
        for (i, z) in v.iter().enumerate() {
            if i % 4 == 0 {
                tr += *z;
            }
            vmax = vmax.max(z.norm());
        }
        if !vmax.is_finite() || vmax > R::lit(1e6) {
            return Err(Error::IntegrationFailure {
                t: t.to_f64().unwrap_or(f64::NAN),
                what: "state magnitude blow-up (reduce dt)",
                drift: vmax.to_f64().unwrap_or(f64::NAN),
                tol: 1e6,
            });
        }
        let trace_drift = (tr - cre(R::one())).norm();
        if trace_drift > trace_tol {
            return Err(Error::IntegrationFailure {
                t: t.to_f64().unwrap_or(f64::NAN),
                what: "trace drift (reduce dt)",
                drift: trace_drift.to_f64().unwrap_or(f64::NAN),
                tol: trace_tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let mut herm_drift = R::zero();
        for i in 0..3 {
            for j in i..3 {
                let d = (v[j * 3 + i] - v[i * 3 + j].conj()).norm();
                herm_drift = herm_drift.max(d);
            }
        }
        if herm_drift > herm_tol {
            return Err(Error::IntegrationFailure {
                t: t.to_f64().unwrap_or(f64::NAN),
                what: "hermiticity drift (reduce dt)",
                drift: herm_drift.to_f64().unwrap_or(f64::NAN),
                tol: herm_tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        // Positivity is an eigenvalue question; sample it periodically.
        if step.is_multiple_of(100) {
            let m = ComplexMatrix::devectorize(&v, 3).hermitian_part();
            let (vals, _) = hermitian_eigen(&m)?;
            if vals[0] < -pos_tol {
                return Err(Error::IntegrationFailure {
                    t: t.to_f64().unwrap_or(f64::NAN),
                    what: "positivity drift (reduce dt)",
                    drift: vals[0].to_f64().unwrap_or(f64::NAN),
                    tol: pos_tol.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
    }

    // Residual drift is within tolerance here; fold it away so the result
    // satisfies the strict state invariants.
    let h = ComplexMatrix::devectorize(&v, 3).hermitian_part();
    let tr = h.trace().re;
    DickeState::from_matrix(h.scaled(cre(tr.recip())))
}

/// Convenience: steady state directly from parameters.
pub fn steady_state_for<R: Real>(p: &SystemParams<R>) -> Result<DickeState<R>> {
    steady_state(&build_liouvillian(p))
}
