//! Seeded random instances: quaternions, vectors, self-adjoint, PSD and
//! correlation matrices.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{QuatMatrix, QuatVector, SelfAdjointQuatMatrix};
use crate::quat::Quaternion;

/// Quaternion with i.i.d. standard normal components.
pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

/// Uniform point of the unit sphere `S³`.
pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = quaternion(rng);
        let n = q.norm();
        if n > 1e-12 {
            return q / n;
        }
    }
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuatVector {
    QuatVector((0..n).map(|_| quaternion(rng)).collect())
}

/// Uniform unit vector in `ℍⁿ`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuatVector {
    let v = vector(rng, n);
    let nv = v.norm();
    v.scale(1.0 / nv)
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> QuatMatrix {
    QuatMatrix::from_fn(m, n, |_, _| quaternion(rng))
}

/// `(B + B*)/2` for Gaussian `B`.
pub fn self_adjoint<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SelfAdjointQuatMatrix {
    let b = matrix(rng, n, n);
    SelfAdjointQuatMatrix::new(b.add(&b.adjoint()).expect("square").scale(0.5))
        .expect("symmetrized")
}

/// `B B*` for Gaussian `B` of shape `n × r`; rank at most `r`.
pub fn psd<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize) -> SelfAdjointQuatMatrix {
    let b = matrix(rng, n, r);
    SelfAdjointQuatMatrix::new(b.matmul(&b.adjoint()).expect("shapes agree")).expect("Gram matrix")
}

/// Gram matrix of `n` uniform unit vectors in `ℍⁿ`.
pub fn correlation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SelfAdjointQuatMatrix {
    let vs: Vec<QuatVector> = (0..n).map(|_| unit_vector(rng, n)).collect();
    let g = QuatMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Quaternion::ONE
        } else {
            vs[i].inner(&vs[j]).expect("equal lengths")
        }
    });
    SelfAdjointQuatMatrix::new(g).expect("Gram matrix")
}

/// Real Wishart matrix `G Gᵀ` with `G` an `n × n` standard normal matrix.
pub fn real_wishart<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    &g * g.transpose()
}
