//! Steady states, spin squeezing, and entanglement of two two-level atoms
//! coupled to a broadband squeezed vacuum and an optional coherent drive.
//!
//! The pair of atoms is treated in the collective (Dicke) basis
//! {|e⟩, |s⟩, |g⟩} of the triplet subspace; the total spin S = 1 is conserved
//! by the master equation, so the singlet never mixes in. The crate computes
//! steady states of the Lindblad generator (analytically where closed forms
//! exist, numerically otherwise), the Kitagawa–Ueda and spectroscopic
//! spin-squeezing parameters, and the partial-transpose entanglement measure
//! E ∈ [0, 1].
//!
//! Layering, bottom to top:
//!
//! * [`numerics`] — dense complex matrices (dim ≤ 16), a Hermitian Jacobi
//!   eigensolver, cubic roots via the companion matrix, and null-space
//!   extraction.
//! * [`model`] — the Dicke basis, collective spin operators, and the exact
//!   embedding into the two-qubit product basis.
//! * [`dynamics`] — the Liouvillian superoperator, numeric steady states,
//!   and fixed-step time integration.
//! * [`analytic`] — closed-form steady states (squeezed-only and
//!   drive-only) and the entangled-eigenstate decomposition.
//! * [`measures`] — spin moments, squeezing parameters, partial transpose,
//!   and the entanglement measure with closed-form cross-checks.
//! * [`cli`] — scenario sweeps, threshold search, self-check, and
//!   deterministic CSV/JSON output (f64 only).
//!
//! Everything below `cli` is generic over the floating-point scalar through
//! [`scalar::Real`]; the aliases at the crate root fix the default `f64`
//! instantiation.

pub mod analytic;
pub mod cli;
pub mod dynamics;
mod error;
pub mod measures;
pub mod model;
pub mod numerics;
pub mod scalar;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Default scalar for the concrete aliases below.
pub type Scalar = f64;

/// Complex number over the default scalar.
pub type Complex = num_complex::Complex<Scalar>;

/// Dense complex matrix over the default scalar.
pub type ComplexMatrix = numerics::ComplexMatrix<Scalar>;

/// Two-atom collective-basis density matrix over the default scalar.
pub type DickeState = model::DickeState<Scalar>;

/// Two-qubit product-basis density matrix over the default scalar.
pub type ProductState = model::ProductState<Scalar>;

/// Collective spin operators over the default scalar.
pub type CollectiveOperators = model::CollectiveOperators<Scalar>;

/// Drive/bath parameter set over the default scalar.
pub type SystemParams = dynamics::SystemParams<Scalar>;

/// Liouvillian superoperator over the default scalar.
pub type Liouvillian = dynamics::Liouvillian<Scalar>;

/// Entangled-eigenstate decomposition over the default scalar.
pub type EigenDecomposition = analytic::EigenDecomposition<Scalar>;

/// First and second collective spin moments over the default scalar.
pub type SpinMoments = measures::SpinMoments<Scalar>;

/// Squeezing-parameter report over the default scalar.
pub type SqueezingReport = measures::SqueezingReport<Scalar>;

/// Entanglement report over the default scalar.
pub type EntanglementReport = measures::EntanglementReport<Scalar>;
