//! Timings of the main kernels: quaternion linear algebra, the SDP solver,
//! the ascent heuristics, exact reversion, root counting and Monte Carlo.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;
use quatgro::certifier::{
    build_phi_u, certify_omega_tau, descartes_count, sturm_count, Truncation,
};
use quatgro::gaussian::mc_sign_formula;
use quatgro::norms::inf1_lower;
use quatgro::sdp::{gamma_sdp, grothendieck_sdp};
use quatgro::series::exact::{p_coeffs, revert_series};
use quatgro::Quaternion;
use quatgro_bench::{matrix, self_adjoint};

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("linalg");
    for n in [8, 32] {
        let (a, b) = (matrix(n, 1), matrix(n, 2));
        g.bench_with_input(BenchmarkId::new("matmul", n), &n, |bch, _| {
            bch.iter(|| a.matmul(black_box(&b)).unwrap())
        });
        let h = self_adjoint(n, 3);
        g.bench_with_input(BenchmarkId::new("eig", n), &n, |bch, _| {
            bch.iter(|| black_box(&h).eig().unwrap())
        });
    }
    g.finish();
}

fn norms(c: &mut Criterion) {
    let mut g = c.benchmark_group("norms");
    g.sample_size(10);
    for n in [3, 6] {
        let m = matrix(n, 4);
        g.bench_with_input(BenchmarkId::new("grothendieck_sdp", n), &n, |bch, _| {
            bch.iter(|| grothendieck_sdp(black_box(&m)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("inf1_lower_64", n), &n, |bch, _| {
            bch.iter(|| inf1_lower(black_box(&m), 64, 0).unwrap())
        });
        let a = self_adjoint(n, 5);
        g.bench_with_input(BenchmarkId::new("gamma_sdp", n), &n, |bch, _| {
            bch.iter(|| gamma_sdp(black_box(&a)).unwrap())
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    for count in [50, 100] {
        let p = p_coeffs(count).unwrap();
        g.bench_with_input(
            BenchmarkId::new("exact_reversion", count),
            &count,
            |bch, &k| bch.iter(|| revert_series(black_box(&p), k).unwrap()),
        );
    }
    g.finish();
}

fn certifier(c: &mut Criterion) {
    let mut g = c.benchmark_group("certifier");
    g.sample_size(10);
    let expr = build_phi_u(20, Truncation::Phi1).unwrap();
    let poly = expr.num;
    let (a, b) = (
        BigRational::new(1.into(), 4.into()),
        BigRational::new(99.into(), 100.into()),
    );
    g.bench_function("sturm_count_m20", |bch| {
        bch.iter(|| sturm_count(black_box(&poly), &a, &b).unwrap())
    });
    g.bench_function("descartes_count_m20", |bch| {
        bch.iter(|| descartes_count(black_box(&poly), &a, &b).unwrap())
    });
    g.bench_function("certify_omega_tau_m20", |bch| {
        bch.iter(|| certify_omega_tau(black_box(20)).unwrap())
    });
    g.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut g = c.benchmark_group("monte_carlo");
    g.sample_size(10);
    let z = Quaternion::new(0.3, -1.2, 0.4, 2.0);
    g.bench_function("sign_formula_1e5", |bch| {
        bch.iter(|| mc_sign_formula(black_box(z), 100_000, 42).unwrap())
    });
    g.finish();
}

criterion_group!(benches, linalg, norms, series, certifier, monte_carlo);
criterion_main!(benches);
