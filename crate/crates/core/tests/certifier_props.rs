//! Exact root counting against constructed roots, Sturm/Descartes agreement
//! inside the certificates, float sampling of certified claims, and the
//! ordering of the truncations against the converged series.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use quatgro::certifier::props::{
    certify_mu_on, certify_omega_p_on, certify_omega_tau_on, claims_for, Certificate, RootCounter,
};
use quatgro::certifier::*;
use quatgro::series::ContinuedP;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    rat(rng.gen_range(-30..=30), rng.gen_range(1..=6))
}

#[test]
fn textbook_sturm_counts() {
    let x2m2 = Poly::from_i64(&[-2, 0, 1]);
    assert_eq!(sturm_count(&x2m2, &rat(1, 1), &rat(2, 1)).unwrap(), 1);
    let cubic = Poly::from_i64(&[0, -1, 0, 1]);
    assert_eq!(sturm_count(&cubic, &rat(-2, 1), &rat(2, 1)).unwrap(), 3);
    let x2p1 = Poly::from_i64(&[1, 0, 1]);
    assert_eq!(sturm_count(&x2p1, &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
    assert!(sturm_count(&Poly::zero(), &rat(0, 1), &rat(1, 1)).is_err());
}

#[test]
fn root_counters_match_constructed_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in 0..200 {
        let mut roots: Vec<BigRational> = (0..rng.gen_range(1..6))
            .map(|_| random_rational(&mut rng))
            .collect();
        let mut p = Poly::one();
        for r in &roots {
            let mult = rng.gen_range(1..=3);
            p = &p * &Poly::from_roots(&vec![r.clone(); mult]);
        }
        if t % 3 == 0 {
            // A factor without real roots.
            p = &p * &Poly::from_i64(&[rng.gen_range(1..5), 0, 1]);
        }
        roots.sort();
        roots.dedup();
        let (mut a, mut b) = (random_rational(&mut rng), random_rational(&mut rng));
        if t % 4 == 1 {
            // Endpoints on roots.
            a = roots[0].clone() - rat(t as i64 % 3, 1);
            b = roots[roots.len() - 1].clone();
        }
        if a == b {
            b = &b + rat(1, 7);
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let half_open = roots.iter().filter(|r| **r > a && **r <= b).count();
        let open = roots.iter().filter(|r| **r > a && **r < b).count();
        let closed = roots.iter().filter(|r| **r >= a && **r <= b).count();
        assert_eq!(sturm_count(&p, &a, &b).unwrap(), half_open, "case {t}");
        let d = sturm_count_detail(&p, &a, &b).unwrap();
        assert_eq!((d.open, d.closed), (open, closed), "case {t}");
        assert_eq!(
            descartes_count(&p, &a, &b).unwrap(),
            RootCount::Exact(open),
            "case {t}"
        );
    }
}

/// A passing certificate has zero roots and the claimed sign in every check.
fn assert_sound(c: &Certificate) {
    for s in &c.checks {
        assert_eq!(
            s.passed,
            s.root_count == 0 && s.sample_sign == s.expected_sign,
            "{}",
            s.label
        );
    }
    assert_eq!(
        c.verdict,
        c.checks.iter().all(|s| s.passed) && c.facts.iter().all(|f| f.passed)
    );
}

#[test]
fn both_root_counters_agree_inside_the_certificates() {
    // `RootCounter::Both` errors out on any disagreement. Sturm chains for the μ claims take minutes beyond m = 12.
    let b = rat(1732, 1000);
    let certs = [
        certify_omega_tau_on(20, &b, RootCounter::Both).unwrap(),
        certify_omega_p_on(20, 7, &b, &rat(5, 1), RootCounter::Both).unwrap(),
        certify_mu_on(12, &rat(101, 100), &b, RootCounter::Both).unwrap(),
    ];
    for c in &certs {
        assert_sound(c);
        assert!(c.checks.iter().all(|s| s.counter == RootCounter::Both));
    }
}

#[test]
fn certified_claims_hold_at_sampled_points() {
    for (prop, m) in [("omega_tau", 50), ("omega_p7", 50), ("mu", 40)] {
        let cert = match prop {
            "omega_tau" => certify_omega_tau(m),
            "omega_p7" => certify_omega_p7(m),
            _ => certify_mu(m),
        }
        .unwrap();
        assert_sound(&cert);
        assert!(cert.verdict, "{}", cert.log());
        for claim in claims_for(prop, m).unwrap() {
            let (a, b) = (claim.a.to_f64().unwrap(), claim.b.to_f64().unwrap());
            let n = 10_000;
            for i in 0..n {
                let x = a + (b - a) * (i as f64 + 0.5) / n as f64;
                let v = claim.expr.eval_f64(m, x);
                assert_eq!(
                    v.signum() as i32,
                    claim.expected_sign,
                    "{prop}: {} at x = {x}: {v}",
                    claim.label
                );
            }
        }
    }
}

#[test]
fn weakened_omega_tau_claim_fails() {
    // ω̃′ changes sign near 1.732 < 1.99.
    let c = certify_omega_tau_on(50, &rat(199, 100), RootCounter::Descartes).unwrap();
    assert!(!c.verdict);
    assert!(c.first_failure().is_some());
    assert!(c.checks.iter().any(|s| s.root_count > 0));
}

#[test]
fn exponent_one_variant_runs() {
    let c =
        certify_omega_p_on(50, 1, &rat(1732, 1000), &rat(5, 1), RootCounter::Descartes).unwrap();
    assert_sound(&c);
}

#[test]
fn phi2_vanishes_at_one() {
    for m in [2, 5, 20, 50] {
        assert!(build_phi_u(m, Truncation::Phi2)
            .unwrap()
            .eval(&rat(1, 1))
            .unwrap()
            .is_zero());
    }
}

/// `(value, first derivative, second derivative)` of `φ₁` and `φ₂` at `x`.
fn targets(cp: &ContinuedP, x: f64) -> [[f64; 3]; 2] {
    let j = cp.jet(x).unwrap();
    let s1 = 3.0 * std::f64::consts::PI / 4.0;
    let s2 = 3.0 * std::f64::consts::PI / 16.0;
    [
        [j.psi1 / s1, j.dpsi1 / s1, j.d2psi1 / s1],
        [j.psi2 / s2, j.dpsi2 / s2, j.d2psi2 / s2],
    ]
}

#[test]
fn truncations_bracket_the_series() {
    let cp = ContinuedP::default();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let m = 40;
    let exprs: Vec<(Truncation, UExpr)> = Truncation::ALL
        .iter()
        .map(|&t| (t, build_phi_u(m, t).unwrap()))
        .collect();
    for _ in 0..100 {
        let x = rat(rng.gen_range(1001..=5000), 1000);
        let xf = x.to_f64().unwrap();
        let tv = targets(&cp, xf);
        for (t, e) in &exprs {
            let v = e.eval(&x).unwrap().to_f64().unwrap();
            let (f, d) = t.target();
            let truth = tv[f as usize - 1][d as usize];
            // Float budget for the converged series; the tails themselves
            // can be far below it.
            let tol = 1e-11 * (1.0 + truth.abs());
            if t.is_upper() {
                assert!(v >= truth - tol, "{t:?} at {xf}: {v} below {truth}");
            } else {
                assert!(v <= truth + tol, "{t:?} at {xf}: {v} above {truth}");
            }
        }
    }
}

#[test]
fn product_bound_degenerate_factor_scales_exactly() {
    let (lo, hi) = product_bound(rat(3, 2), rat(3, 2), rat(-2, 1), rat(4, 1), false).unwrap();
    assert_eq!((lo, hi), (rat(-3, 1), rat(6, 1)));
}
