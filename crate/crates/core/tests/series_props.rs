//! Exact series identities, reversion round-trips, continued-function
//! monotonicity and the tail-bound chain against exact coefficient signs.

use num_rational::BigRational;
use num_traits::{One, Zero};
use quatgro::gaussian::p_quadrature;
use quatgro::series::constants::{
    inverse_coeffs_f64, inverse_coeffs_float_route, p_coeffs_f64, p_series_f64, psi_truncated,
};
use quatgro::series::continued::find_tau;
use quatgro::series::exact::{compose_rational, revert_rational};
use quatgro::series::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn p_and_h_are_scaled_hypergeometric_series() {
    let p = p_coeffs(60).unwrap();
    let p3 = p_ell_coeffs(3, 60).unwrap();
    assert_eq!(p.rational, p3.rational);
    let pf = p_coeffs_f64(60);
    for (k, &pk) in pf.iter().enumerate() {
        assert!(p.rational[k] > BigRational::zero());
        assert!((p.coeff_f64(k) - pk).abs() <= 1e-14 * pk, "k = {k}");
    }
    // h = (π/4) p₂.
    let h = h_coeffs(60).unwrap();
    let p2 = p_ell_coeffs(2, 60).unwrap();
    for k in 0..60 {
        let direct =
            std::f64::consts::FRAC_PI_4 * num_traits::ToPrimitive::to_f64(&p2.rational[k]).unwrap();
        assert!((h.coeff_f64(k) - direct).abs() <= 1e-14 * direct, "k = {k}");
    }
}

#[test]
fn derivative_identity_holds_exactly() {
    // (x³p)′ = Σ (2k+4) p_k x^{2k+3} and (9/2) x²h = Σ (9/2) h_k x^{2k+3};
    // both carry λ⁻¹, so (2k+4) r_k(p) = (9/2) r_k(h) on rational parts.
    let p = p_coeffs(50).unwrap();
    let h = h_coeffs(50).unwrap();
    assert_eq!(p.scale_exponent(7), h.scale_exponent(7));
    for k in 0..50 {
        let lhs = &p.rational[k] * BigRational::from_integer((2 * k as i64 + 4).into());
        assert_eq!(lhs, &h.rational[k] * rat(9, 2), "k = {k}");
    }
}

#[test]
fn reversion_composes_to_the_identity() {
    let g = p_ell_coeffs(3, 30).unwrap().rational;
    let inv = revert_rational(&g, 30).unwrap();
    for comp in [
        compose_rational(&g, &inv, 30).unwrap(),
        compose_rational(&inv, &g, 30).unwrap(),
    ] {
        assert!(comp[0].is_one());
        assert!(comp[1..].iter().all(Zero::is_zero));
    }
    // Reversion is an involution, scale included.
    let p = p_coeffs(30).unwrap();
    assert_eq!(
        revert_series(&revert_series(&p, 30).unwrap(), 30).unwrap(),
        p
    );
}

#[test]
fn inverse_signs_match_for_p_and_p3() {
    let a = revert_series(&p_coeffs(60).unwrap(), 60).unwrap();
    let b = revert_series(&p_ell_coeffs(3, 60).unwrap(), 60).unwrap();
    for k in 0..60 {
        assert_eq!(a.sign(k), b.sign(k), "k = {k}");
    }
}

#[test]
fn float_reversion_agrees_at_low_order() {
    let exact = inverse_coeffs_f64(20).unwrap();
    let float = inverse_coeffs_float_route(20).unwrap();
    for k in 0..20 {
        assert!(
            (exact[k] - float[k]).abs() <= 1e-9 * exact[k].abs(),
            "k = {k}: {} vs {}",
            exact[k],
            float[k]
        );
    }
}

#[test]
fn sum_of_inverse_magnitudes_approaches_its_limit() {
    let c = inverse_coeffs_f64(500).unwrap();
    let limit = 2.0 * lambda() - 1.0;
    let mut partial = 0.0;
    let mut sums = vec![];
    for ck in &c[1..] {
        partial += ck.abs();
        sums.push(partial);
    }
    assert!(sums.windows(2).all(|w| w[1] > w[0]));
    let total = c[0] + partial;
    assert!((1.25..=1.263537).contains(&total), "{total}");
    assert!(total < limit, "{total} vs {limit}");
    // Since c₁ > 0 and the rest are negative, p⁻¹(1) = c₁ − Σ_{k≥1}|c_{2k+1}| = 1.
    assert!((c[0] - partial - 1.0).abs() < 2e-3, "{}", c[0] - partial);
}

#[test]
fn psi_at_c0_is_one() {
    let k = solve_constants().unwrap();
    let v = psi_truncated(k.c0, 200).unwrap();
    assert!((v - 1.0).abs() < 1e-8, "{v}");
}

#[test]
fn p_is_increasing_with_unit_value_at_one() {
    assert!((p_series_f64(1.0, 400_000) - 1.0).abs() < 1e-10);
    assert!((p_quadrature(1.0).unwrap() - 1.0).abs() < 1e-10);
    let mut prev = -f64::INFINITY;
    for i in -1000..=1000 {
        let v = p_quadrature(i as f64 / 1000.0).unwrap();
        assert!(v > prev, "p not increasing at {}", i as f64 / 1000.0);
        prev = v;
    }
}

#[test]
fn continued_functions_are_monotone_on_a_grid() {
    let cp = ContinuedP::default();
    let jets: Vec<Jet> = (0..=4000)
        .map(|i| cp.jet(1.0 + i as f64 * 1e-3).unwrap())
        .collect();
    for w in jets.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        assert!(b.psi1 >= a.psi1 && b.psi2 >= a.psi2, "x = {}", b.x);
        assert!(
            b.psi2 / b.psi1 > a.psi2 / a.psi1,
            "psi2/psi1 at x = {}",
            b.x
        );
        assert!(b.theta() > a.theta(), "theta at x = {}", b.x);
    }
    // μ decreases on [1, τ].
    let tau = find_tau(&cp).unwrap();
    let mus: Vec<f64> = jets
        .iter()
        .skip(1)
        .filter(|j| j.x <= tau)
        .map(Jet::mu)
        .collect();
    assert!(mus.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn eval_rejects_points_below_one() {
    assert!(ContinuedP::default().eval(0.99, Which::Theta).is_err());
}

#[test]
fn tail_bound_chain_matches_exact_signs() {
    let cp = ContinuedP::default();
    let lm = landmarks(&cp).unwrap();
    let inv = revert_series(&p_coeffs(21).unwrap(), 21).unwrap();
    for n in (21..=41).step_by(2) {
        let t = haagerup_tail_bound(&cp, &lm, n, 5.0).unwrap();
        assert!(t.cn_negative, "n = {n}: {t:?}");
        assert_eq!(inv.sign((n - 1) / 2), -1, "exact sign of c_{n}");
        assert!(t.i1 >= t.i1_lb, "n = {n}: I1 {} below {}", t.i1, t.i1_lb);
        assert!(t.i2 <= t.i2_ub, "n = {n}");
    }
    let t = haagerup_tail_bound(&cp, &lm, 25, 5.0).unwrap();
    assert!(t.i2 < 0.033 * t.i1, "I2/I1 = {}", t.i2 / t.i1);
    assert!(haagerup_tail_bound(&cp, &lm, 20, 5.0).is_err());
    assert!(haagerup_tail_bound(&cp, &lm, 19, 5.0).is_err());
}
