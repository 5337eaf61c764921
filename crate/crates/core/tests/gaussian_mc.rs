//! Moments of the quaternion Gaussian, the sign-integral and Grothendieck
//! identities by Monte Carlo, `f_ℍ` against its series, and sign rounding.

use std::f64::consts::PI;

use quatgro::gaussian::*;
use quatgro::norms::inf1_objective;
use quatgro::sdp::grothendieck_sdp;
use quatgro::series::constants::p_series_f64;
use quatgro::{random, QuatMatrix, QuatVector, Quaternion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit_real(cos: f64, n: usize) -> (QuatVector, QuatVector) {
    let mut u = vec![Quaternion::ZERO; n];
    let mut v = vec![Quaternion::ZERO; n];
    u[0] = Quaternion::ONE;
    v[0] = Quaternion::real(cos);
    v[1] = Quaternion::real((1.0 - cos * cos).sqrt());
    (QuatVector(u), QuatVector(v))
}

#[test]
fn sample_moments_match_the_density() {
    let n = 3;
    let count = 100_000;
    let s = sample(n, count, 5).unwrap();
    assert_eq!(s, sample(n, count, 5).unwrap());
    assert_ne!(s[0], sample(n, 1, 6).unwrap()[0]);
    // ‖z‖² is a sum of 4n squares of N(0, ¼): mean n, variance 4n·2·(¼)² = n/2.
    let norms: Vec<f64> = s.iter().map(|z| z.norm().powi(2)).collect();
    let mean = norms.iter().sum::<f64>() / count as f64;
    let sigma = (n as f64 / 2.0 / count as f64).sqrt();
    assert!((mean - n as f64).abs() < 3.0 * sigma, "{mean}");
    // Components of one coordinate: mean 0 (σ = ½/√N) and variance ¼.
    let s1 = sample(1, count, 8).unwrap();
    for c in 0..4 {
        let xs: Vec<f64> = s1.iter().map(|z| z.0[0].to_array()[c]).collect();
        let m = xs.iter().sum::<f64>() / count as f64;
        let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / count as f64;
        assert!(
            m.abs() < 3.0 * 0.5 / (count as f64).sqrt(),
            "component {c} mean {m}"
        );
        // Var of the sample variance of N(0, σ²) is 2σ⁴/N.
        assert!(
            (var - 0.25).abs() < 3.0 * (2.0 * 0.0625 / count as f64).sqrt(),
            "component {c} variance {var}"
        );
    }
}

#[test]
fn sphere_samples_are_rotation_invariant() {
    let count = 100_000;
    let w: Vec<Quaternion> = sample(1, count, 9)
        .unwrap()
        .iter()
        .map(|z| z.0[0] / z.0[0].norm())
        .collect();
    let q = random::unit_quaternion(&mut ChaCha8Rng::seed_from_u64(10));
    let qw: Vec<Quaternion> = w.iter().map(|&x| q * x).collect();
    // Uniform on S³: each component has E x = 0, E x² = ¼ and E x⁴ = 1/8, so
    // the estimates have standard deviations ½/√N and ¼/√N.
    let n = count as f64;
    for set in [&w, &qw] {
        for c in 0..4 {
            let m = set.iter().map(|x| x.to_array()[c]).sum::<f64>() / n;
            let m2 = set.iter().map(|x| x.to_array()[c].powi(2)).sum::<f64>() / n;
            assert!(m.abs() < 3.0 * 0.5 / n.sqrt(), "mean {m}");
            assert!(
                (m2 - 0.25).abs() < 3.0 * 0.25 / n.sqrt(),
                "second moment {m2}"
            );
        }
    }
}

#[test]
fn sign_formula_reproduces_the_sign() {
    for z in [Quaternion::K, Quaternion::new(0.3, -1.2, 0.4, 2.0)] {
        let e = mc_sign_formula(z, 1_000_000, 42).unwrap();
        assert!(e.error() < 5e-3, "{z}: {} vs {}", e.estimate, e.reference);
    }
}

#[test]
fn grothendieck_identity_cases() {
    let samples = 1_000_000;
    // u ⊥ v.
    let (u, v) = unit_real(0.0, 2);
    let e = mc_grothendieck_identity(&u, &v, samples, 1).unwrap();
    assert_eq!(e.reference, Quaternion::ZERO);
    assert!(e.error() < 5e-3, "{}", e.estimate);
    // u = v.
    let e = mc_grothendieck_identity(&u, &u, samples, 2).unwrap();
    assert!((e.reference - Quaternion::ONE).norm() < 1e-9);
    assert!(e.error() < 1e-12, "{}", e.estimate);
    // A quaternion inner product: the identity holds with ⟨u,v⟩ non-real.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (u, v) = (
        random::unit_vector(&mut rng, 2),
        random::unit_vector(&mut rng, 2),
    );
    let e = mc_grothendieck_identity(&u, &v, samples, 3).unwrap();
    assert!(e.error() < 5e-3, "{} vs {}", e.estimate, e.reference);
    // Preconditions.
    assert!(mc_grothendieck_identity(&u.scale(2.0), &v, 10, 1).is_err());
    assert!(mc_grothendieck_identity(&u, &unit_real(0.0, 3).0, 10, 1).is_err());
}

#[test]
fn monte_carlo_error_decays_like_inverse_root() {
    // RMS error over a fixed ensemble; quadrupling the samples halves it.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pairs: Vec<(QuatVector, QuatVector)> = (0..30)
        .map(|_| {
            (
                random::unit_vector(&mut rng, 2),
                random::unit_vector(&mut rng, 2),
            )
        })
        .collect();
    let rms = |samples: usize| {
        let s: f64 = pairs
            .iter()
            .enumerate()
            .map(|(i, (u, v))| {
                mc_grothendieck_identity(u, v, samples, 100 + i as u64)
                    .unwrap()
                    .error()
                    .powi(2)
            })
            .sum();
        (s / pairs.len() as f64).sqrt()
    };
    let (small, large) = (rms(10_000), rms(40_000));
    let ratio = large / small;
    assert!(
        (0.35..0.7).contains(&ratio),
        "{small} -> {large}: ratio {ratio}"
    );
}

#[test]
fn fh_values_and_monotonicity() {
    assert!((eval_fh(0.0).unwrap() - 9.0 * PI / 32.0).abs() < 1e-10);
    assert!((eval_fh(1.0).unwrap() - 1.0).abs() < 1e-6);
    assert!(eval_fh(-0.1).is_err());
    assert!(eval_fh(f64::NAN).is_err());
    let t = 0.3;
    assert!((t * eval_fh(t).unwrap() - p_series_f64(t, 200)).abs() < 1e-8);
    let mut prev = 0.0;
    for i in 0..=1000 {
        let v = eval_fh(i as f64 / 1000.0).unwrap();
        assert!(v > prev, "not increasing at {}", i as f64 / 1000.0);
        prev = v;
    }
}

#[test]
fn rounding_one_by_one_is_exact() {
    let m = QuatMatrix::from_real_rows(&[vec![1.0]]).unwrap();
    let u = vec![QuatVector(vec![Quaternion::ONE, Quaternion::ZERO])];
    let r = gaussian_round(&u, &u, &m, 1000, 1).unwrap();
    assert!((r.best_value - 1.0).abs() < 1e-12);
    assert!((r.mean_value - 1.0).abs() < 1e-12);
    assert!((r.expected_value - 1.0).abs() < 1e-9);
}

#[test]
fn rounding_chsh_from_sdp_vectors() {
    let m = QuatMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
    let s = grothendieck_sdp(&m).unwrap();
    let (u, v) = s.vectors(2).unwrap();
    let r = gaussian_round(&u, &v, &m, 10_000, 42).unwrap();
    assert!(r.best_value >= 1.9, "{}", r.best_value);
    assert!((inf1_objective(&m, &r.eps, &r.delta) - r.best_value).abs() < 1e-12);
    // The sample mean estimates Σ Mᵢⱼ ⟨uᵢ,vⱼ⟩ f_ℍ(|⟨uᵢ,vⱼ⟩|); each sample is
    // bounded by Σ|Mᵢⱼ| = 4.
    assert!(
        (r.mean_value - r.expected_value).abs() < 3.0 * 4.0 / 100.0,
        "{} vs {}",
        r.mean_value,
        r.expected_value
    );
}

#[test]
fn rounding_mean_matches_expectation_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..5 {
        let m = random::matrix(&mut rng, 3, 3);
        let s = grothendieck_sdp(&m).unwrap();
        let (u, v) = s.vectors(3).unwrap();
        let r = gaussian_round(&u, &v, &m, 200_000, t).unwrap();
        let bound: f64 = m.entries().iter().map(|q| q.norm()).sum();
        let tol = 4.0 * bound / (200_000f64).sqrt();
        assert!(
            (r.mean_value - r.expected_value).abs() < tol,
            "{} vs {}",
            r.mean_value,
            r.expected_value
        );
        assert!(r.best_value <= s.value + 1e-6);
    }
}
