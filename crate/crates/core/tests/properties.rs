//! Shrinking property tests for the norm bounds, the exact root counters and
//! series reversion.

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use quatgro::certifier::{descartes_count, sturm_count_detail, Poly, RootCount};
use quatgro::norms::inf1_lower;
use quatgro::sdp::grothendieck_sdp;
use quatgro::series::exact::{compose_rational, revert_rational};
use quatgro::{QuatMatrix, Quaternion};

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(Quaternion::from_array)
}

fn unit_quat() -> impl Strategy<Value = Quaternion> {
    quat()
        .prop_filter("nonzero", |q| q.norm() > 0.1)
        .prop_map(|q| q / q.norm())
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = QuatMatrix> {
    prop::collection::vec(quat(), r * c).prop_map(move |v| QuatMatrix::from_vec(r, c, v).unwrap())
}

fn scale(m: &QuatMatrix) -> f64 {
    m.entries().iter().map(|q| q.norm()).sum::<f64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ascent_lower_bound_sits_below_sdp(m in matrix(2, 3)) {
        let lower = inf1_lower(&m, 8, 0).unwrap();
        let s = grothendieck_sdp(&m).unwrap();
        let tol = 1e-6 * (1.0 + scale(&m));
        prop_assert!(lower.lower <= s.value + tol, "{} > {}", lower.lower, s.value);
        prop_assert!(s.value <= s.upper + tol);
    }

    #[test]
    fn sdp_value_is_homogeneous_and_phase_invariant(m in matrix(2, 2), t in 0.1f64..5.0, q in unit_quat()) {
        let base = grothendieck_sdp(&m).unwrap().value;
        let tol = 1e-6 * (1.0 + scale(&m) * t);
        let scaled = grothendieck_sdp(&m.scale(t)).unwrap().value;
        prop_assert!((scaled - t * base).abs() < tol, "{scaled} vs {}", t * base);
        // Re(Mᵢⱼ q ε̄ᵢ δⱼ) absorbs q into εᵢ ↦ εᵢq̄; Re(q Mᵢⱼ ε̄ᵢ δⱼ) absorbs it into δⱼ ↦ δⱼq.
        let mut rotated = m.clone();
        for j in 0..m.cols() {
            rotated[(0, j)] = m[(0, j)] * q;
        }
        for i in 0..m.rows() {
            rotated[(i, 1)] = q * rotated[(i, 1)];
        }
        let r = grothendieck_sdp(&rotated).unwrap().value;
        prop_assert!((r - base).abs() < tol, "{r} vs {base}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_and_descartes_agree(
        coeffs in prop::collection::vec(-9i64..=9, 2..10),
        a in -40i64..40,
        width in 1i64..40,
        den in 1i64..8,
    ) {
        let p = Poly::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        let lo = BigRational::new(a.into(), den.into());
        let hi = BigRational::new((a + width).into(), den.into());
        let d = sturm_count_detail(&p, &lo, &hi).unwrap();
        prop_assert_eq!(descartes_count(&p, &lo, &hi).unwrap(), RootCount::Exact(d.open));
        prop_assert!(d.open <= d.closed && d.closed <= d.open + 2);
    }

    #[test]
    fn reversion_inverts_composition(
        lead in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
        rest in prop::collection::vec((-5i64..=5, 1i64..=4), 0..6),
    ) {
        let mut g = vec![BigRational::from_integer(lead.into())];
        g.extend(rest.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())));
        let count = 8;
        let inv = revert_rational(&g, count).unwrap();
        let comp = compose_rational(&g, &inv, count).unwrap();
        prop_assert!(comp[0].is_one());
        prop_assert!(comp[1..].iter().all(Zero::is_zero));
    }
}
