//! Seeded benchmark inputs shared by the criterion targets.

use quatgro::{random, QuatMatrix, SelfAdjointQuatMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random `n × n` quaternion matrix with standard Gaussian entries.
pub fn matrix(n: usize, seed: u64) -> QuatMatrix {
    random::matrix(&mut ChaCha8Rng::seed_from_u64(seed), n, n)
}

/// Random self-adjoint `n × n` quaternion matrix.
pub fn self_adjoint(n: usize, seed: u64) -> SelfAdjointQuatMatrix {
    random::self_adjoint(&mut ChaCha8Rng::seed_from_u64(seed), n)
}
