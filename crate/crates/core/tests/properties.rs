//! Randomized invariant checks with fixed seeds: algebraic identities of the
//! numerics layer and structural properties of the physical steady states
//! that hold for every admissible parameter draw.

use dicke2::analytic::steady_squeezed;
use dicke2::dynamics::steady_state_for;
use dicke2::measures::{negativity, squeezing_parameters, ClosedFormSpectrum};
use dicke2::numerics::{cubic_roots, hermitian_eigen, ComplexMatrix, CubicCoefficients};
use dicke2::scalar::cre;
use dicke2::{Complex, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn cubic_roots_satisfy_vieta_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3101);
    for _ in 0..300 {
        let c = CubicCoefficients {
            a2: rng.gen_range(-3.0..3.0),
            a1: rng.gen_range(-3.0..3.0),
            a0: rng.gen_range(-3.0..3.0),
        };
        let [r0, r1, r2] = cubic_roots(&c);
        let sum = r0 + r1 + r2;
        let pairs = r0 * r1 + r0 * r2 + r1 * r2;
        let product = r0 * r1 * r2;
        assert!(
            (sum + cre(c.a2)).norm() < 1e-9,
            "root sum {sum} vs -a2 {}",
            -c.a2
        );
        assert!(
            (pairs - cre(c.a1)).norm() < 1e-9,
            "pair sum {pairs} vs a1 {}",
            c.a1
        );
        assert!(
            (product + cre(c.a0)).norm() < 1e-9,
            "product {product} vs -a0 {}",
            -c.a0
        );
    }
}

#[test]
fn hermitian_eigen_reconstructs_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3102);
    for trial in 0..30 {
        let n = 2 + trial % 8;
        let raw = ComplexMatrix::<f64>::from_fn(n, n, |_, _| {
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let m = raw.hermitian_part();
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        for w in vals.windows(2) {
            assert!(w[0] <= w[1], "eigenvalues not ascending: {vals:?}");
        }
        let mut reconstruction_err = 0.0f64;
        let mut orthonormality_err = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut rebuilt = Complex::new(0.0, 0.0);
                let mut gram = Complex::new(0.0, 0.0);
                for k in 0..n {
                    rebuilt += vecs[(i, k)] * vals[k] * vecs[(j, k)].conj();
                    gram += vecs[(k, i)].conj() * vecs[(k, j)];
                }
                reconstruction_err = reconstruction_err.max((rebuilt - m[(i, j)]).norm());
                let target = if i == j { cre(1.0) } else { cre(0.0) };
                orthonormality_err = orthonormality_err.max((gram - target).norm());
            }
        }
        assert!(
            reconstruction_err < 1e-10,
            "n={n}: reconstruction error {reconstruction_err:.3e}"
        );
        assert!(
            orthonormality_err < 1e-10,
            "n={n}: orthonormality error {orthonormality_err:.3e}"
        );
    }
}

#[test]
fn vectorize_devectorize_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3103);
    for n in 1..=4usize {
        let m = ComplexMatrix::<f64>::from_fn(n, n, |_, _| {
            Complex::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))
        });
        let v = m.vectorize();
        assert_eq!(v.len(), n * n);
        let back = ComplexMatrix::devectorize(&v, n);
        assert!(back == m, "round trip changed the matrix for n={n}");
    }
}

/// Draws an admissible squeezed-bath parameter pair (N, M) with M real of
/// either sign and |M| strictly inside the positivity bound.
fn random_squeezed_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let n = rng.gen_range(0.02..3.0);
    let strength = rng.gen_range(0.0..1.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    (n, sign * strength * (n * (n + 1.0)).sqrt())
}

#[test]
fn mean_spin_bounded_so_rotated_ratios_dominate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3104);
    for _ in 0..200 {
        let (n, m) = random_squeezed_pair(&mut rng);
        let rho = steady_squeezed(n, m).unwrap();
        let s = squeezing_parameters(&rho).unwrap();
        assert!(
            s.u_param <= 1.0 + 1e-12,
            "mean spin length {} > 1 at N={n}, M={m}",
            s.u_param
        );
        if !s.ratios_unbounded {
            assert!(s.xi_r_n1 >= s.xi_s_n1 * (1.0 - 1e-12));
            assert!(s.xi_r_n2 >= s.xi_s_n2 * (1.0 - 1e-12));
        }
    }
}

#[test]
fn squeezed_bath_squeezes_at_most_one_axis() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3105);
    for _ in 0..200 {
        let (n, m) = random_squeezed_pair(&mut rng);
        let rho = steady_squeezed(n, m).unwrap();
        let s = squeezing_parameters(&rho).unwrap();
        let below = [s.xi_s_n1, s.xi_s_n2]
            .iter()
            .filter(|&&xi| xi < 1.0 - 1e-12)
            .count();
        assert!(
            below <= 1,
            "both axes squeezed at N={n}, M={m}: ({}, {})",
            s.xi_s_n1,
            s.xi_s_n2
        );
    }
}

#[test]
fn two_photon_spectrum_keeps_the_positive_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3106);
    for _ in 0..200 {
        let (n, m) = random_squeezed_pair(&mut rng);
        let rho = steady_squeezed(n, m).unwrap();
        let ent = negativity(&rho).unwrap();
        match ent.closed_form {
            Some(ClosedFormSpectrum::TwoPhoton { lambda2_minus, .. }) => {
                assert!(
                    lambda2_minus >= -1e-12,
                    "lambda2- = {lambda2_minus} at N={n}, M={m}"
                );
            }
            other => panic!("expected the two-photon closed form, got {other:?}"),
        }
    }
}

#[test]
fn negativity_is_a_clamped_least_eigenvalue() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3107);
    for _ in 0..150 {
        let omega = rng.gen_range(0.0..3.0);
        let n: f64 = rng.gen_range(0.0..2.0);
        let strength = rng.gen_range(0.0..1.0);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let m = Complex::from_polar(strength * (n * (n + 1.0)).sqrt(), phase);
        let p = SystemParams::new(omega, 1.0, n, m).unwrap();
        let rho = steady_state_for(&p).unwrap();
        let ent = negativity(&rho).unwrap();
        let sum: f64 = ent.pt_eigenvalues.iter().sum();
        assert!((sum - 1.0).abs() < 1e-10, "PT trace {sum} != 1");
        let expected = (-2.0 * ent.pt_eigenvalues[0]).max(0.0);
        assert!(
            (ent.measure_e - expected).abs() < 1e-12,
            "E = {} vs clamped eigenvalue {expected}",
            ent.measure_e
        );
        assert!((0.0..=1.0 + 1e-12).contains(&ent.measure_e));
        let negatives = ent.pt_eigenvalues.iter().filter(|&&l| l < -1e-12).count();
        assert!(negatives <= 1, "{negatives} negative PT eigenvalues");
    }
}

#[test]
fn single_precision_pipeline_tracks_the_double_precision_values() {
    let p = dicke2::dynamics::SystemParams::<f32>::new(0.0, 1.0, 0.25, cre(0.25f32)).unwrap();
    let rho = steady_state_for(&p).unwrap();
    let oracle = [
        (rho.ee(), 1.0f32 / 21.0),
        (rho.ss(), 3.0 / 21.0),
        (rho.gg(), 17.0 / 21.0),
        (rho.eg().re, 2.0 / 21.0),
    ];
    for (got, want) in oracle {
        assert!(
            (got - want).abs() < 1e-4,
            "f32 steady state element {got} vs {want}"
        );
    }
    let s = squeezing_parameters(&rho).unwrap();
    assert!((s.xi_s_n2 - 20.0 / 21.0).abs() < 1e-3);
    let ent = negativity(&rho).unwrap();
    assert!((ent.measure_e - 1.0 / 21.0).abs() < 1e-3);
}
