//! Quaternion Gaussian sampling, Monte-Carlo checks of the sign-integral
//! formula and the quaternionic Grothendieck identity, the kernel `f_ℍ`,
//! and Gaussian sign rounding of Gram vectors.
//!
//! Components are i.i.d. normal with variance ¼, so the density on `ℍⁿ` is
//! `(π/2)^{−2n} exp(−2‖z‖²)`. Samples are produced in fixed-size chunks,
//! each drawn from its own ChaCha stream, and reduced in chunk order, so
//! estimates do not depend on the number of worker threads.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{QuatMatrix, QuatVector};
use crate::norms::inf1_objective;
use crate::quad::integrate;
use crate::quat::{Quaternion, SignConvention};

/// Samples per chunk; each chunk uses stream `chunk index` of the seed.
pub const CHUNK: usize = 4096;

/// Minimum sample count for the sign-formula estimator.
pub const MIN_SIGN_SAMPLES: usize = 10_000;

/// Tolerance on `‖u‖ = 1` preconditions.
pub const UNIT_TOL: f64 = 1e-9;

/// Seeded sampler of `n`-dimensional quaternion Gaussians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuatGaussianSampler {
    pub n: usize,
    pub seed: u64,
}

impl QuatGaussianSampler {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        Ok(QuatGaussianSampler { n, seed })
    }

    /// RNG for chunk `c`.
    pub fn chunk_rng(&self, c: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(c as u64);
        rng
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> QuatVector {
        let normal = Normal::new(0.0, 0.5).expect("valid normal");
        QuatVector(
            (0..self.n)
                .map(|_| {
                    Quaternion::new(
                        normal.sample(rng),
                        normal.sample(rng),
                        normal.sample(rng),
                        normal.sample(rng),
                    )
                })
                .collect(),
        )
    }

    /// The first `len` samples of chunk `c`.
    fn chunk(&self, c: usize, len: usize) -> Vec<QuatVector> {
        let mut rng = self.chunk_rng(c);
        (0..len).map(|_| self.draw(&mut rng)).collect()
    }
}

/// Chunk lengths covering `count` samples.
fn chunk_lengths(count: usize) -> Vec<usize> {
    let full = count / CHUNK;
    let mut v = vec![CHUNK; full];
    if !count.is_multiple_of(CHUNK) {
        v.push(count % CHUNK);
    }
    v
}

/// `count` reproducible Gaussian samples in `ℍⁿ`.
pub fn sample(n: usize, count: usize, seed: u64) -> Result<Vec<QuatVector>> {
    let s = QuatGaussianSampler::new(n, seed)?;
    Ok(chunk_lengths(count)
        .into_iter()
        .enumerate()
        .flat_map(|(c, len)| s.chunk(c, len))
        .collect())
}

/// Mean of a quaternion-valued statistic with per-component standard errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: Quaternion,
    pub stderr: [f64; 4],
    pub reference: Quaternion,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// `|estimate − reference|`.
    pub fn error(&self) -> f64 {
        (self.estimate - self.reference).norm()
    }
}

/// Chunk-ordered mean and standard error of `scale · f(sample)`.
fn mc_mean<F>(
    sampler: &QuatGaussianSampler,
    samples: usize,
    scale: f64,
    f: F,
) -> (Quaternion, [f64; 4])
where
    F: Fn(&QuatVector) -> Quaternion + Sync,
{
    let lens = chunk_lengths(samples);
    let parts: Vec<([f64; 4], [f64; 4])> = lens
        .par_iter()
        .enumerate()
        .map(|(c, &len)| {
            let mut rng = sampler.chunk_rng(c);
            let mut s = [0.0; 4];
            let mut s2 = [0.0; 4];
            for _ in 0..len {
                let z = sampler.draw(&mut rng);
                let v = f(&z).to_array();
                for k in 0..4 {
                    s[k] += v[k];
                    s2[k] += v[k] * v[k];
                }
            }
            (s, s2)
        })
        .collect();
    let mut s = [0.0; 4];
    let mut s2 = [0.0; 4];
    for (a, b) in parts {
        for k in 0..4 {
            s[k] += a[k];
            s2[k] += b[k];
        }
    }
    let nf = samples as f64;
    let mut mean = [0.0; 4];
    let mut se = [0.0; 4];
    for k in 0..4 {
        mean[k] = s[k] / nf;
        let var = (s2[k] / nf - mean[k] * mean[k]).max(0.0);
        se[k] = scale * (var / nf).sqrt();
        mean[k] *= scale;
    }
    (Quaternion::from_array(mean), se)
}

/// Estimate of `(3/(8π)) ∫_{S³} sign(Re(w̄z)) w dσ(w)`, which equals
/// `sign(z)`. Uniform `S³` points are normalized Gaussians; the surface
/// area `2π²` turns the average into `(3π/4) E[sign(Re(w̄z)) w]`.
pub fn mc_sign_formula(z: Quaternion, samples: usize, seed: u64) -> Result<McEstimate> {
    if samples < MIN_SIGN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_SIGN_SAMPLES} samples, got {samples}"
        )));
    }
    let sampler = QuatGaussianSampler::new(1, seed)?;
    let (estimate, stderr) = mc_mean(&sampler, samples, 0.75 * PI, |v| {
        let w = v.0[0];
        let n = w.norm();
        if n == 0.0 {
            return Quaternion::ZERO;
        }
        let w = w / n;
        let d = w.dot(z);
        if d > 0.0 {
            w
        } else if d < 0.0 {
            -w
        } else {
            Quaternion::ZERO
        }
    });
    Ok(McEstimate {
        estimate,
        stderr,
        reference: z.sign(SignConvention::ZeroMapsToZero),
        samples,
        seed,
    })
}

fn check_unit(v: &QuatVector, name: &str) -> Result<()> {
    if (v.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidInput(format!(
            "{name} must be a unit vector (norm {})",
            v.norm()
        )));
    }
    Ok(())
}

/// Estimate of `E[sign⟨u,z⟩ sign⟨z,v⟩]` over Gaussian `z`, with reference
/// `⟨u,v⟩ f_ℍ(|⟨u,v⟩|)`.
pub fn mc_grothendieck_identity(
    u: &QuatVector,
    v: &QuatVector,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    check_unit(u, "u")?;
    check_unit(v, "v")?;
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            u.len(),
            v.len()
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("samples must be positive".into()));
    }
    let sampler = QuatGaussianSampler::new(u.len(), seed)?;
    let (estimate, stderr) = mc_mean(&sampler, samples, 1.0, |z| {
        let a = u
            .inner(z)
            .expect("same length")
            .sign(SignConvention::ZeroMapsToZero);
        let b = z
            .inner(v)
            .expect("same length")
            .sign(SignConvention::ZeroMapsToZero);
        a * b
    });
    let uv = u.inner(v)?;
    let reference = uv * eval_fh(uv.norm().min(1.0))?;
    Ok(McEstimate {
        estimate,
        stderr,
        reference,
        samples,
        seed,
    })
}

/// `f_ℍ(t) = (3/2) ∫₀^{π/2} cos⁴s / √(1 − t² sin²s) ds` for `t ∈ [0, 1]`.
///
/// The radicand is evaluated as `cos²s + (1 − t²) sin²s`; at `t = 1` the
/// integrand reduces to `cos³s` and stays smooth.
pub fn eval_fh(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("f_H needs t in [0, 1], got {t}")));
    }
    let one_minus = (1.0 - t) * (1.0 + t);
    let (v, _) = integrate(
        |s: f64| {
            let (sn, cs) = s.sin_cos();
            let c2 = cs * cs;
            let r = c2 + one_minus * sn * sn;
            if r <= 0.0 {
                0.0
            } else {
                c2 * c2 / r.sqrt()
            }
        },
        0.0,
        FRAC_PI_2,
        1e-14,
        1e-14,
    )?;
    Ok(1.5 * v)
}

/// `p(x) = x f_ℍ(|x|)` on `[−1, 1]`.
pub fn p_quadrature(x: f64) -> Result<f64> {
    Ok(x * eval_fh(x.abs())?)
}

/// Outcome of Gaussian sign rounding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundingResult {
    /// Best sampled value of `Re Σ Mᵢⱼ ε̄ᵢ δⱼ`.
    pub best_value: f64,
    pub eps: Vec<Quaternion>,
    pub delta: Vec<Quaternion>,
    /// Average sampled value.
    pub mean_value: f64,
    /// `Re Σ Mᵢⱼ ⟨uᵢ,vⱼ⟩ f_ℍ(|⟨uᵢ,vⱼ⟩|)`, the expectation of the sampled value.
    pub expected_value: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Rounds unit vectors `uᵢ, vⱼ` to unit scalars by a shared Gaussian `z`:
/// `εᵢ = sign⟨z,uᵢ⟩`, `δⱼ = sign⟨z,vⱼ⟩`, so that `ε̄ᵢδⱼ = sign⟨uᵢ,z⟩ sign⟨z,vⱼ⟩`.
pub fn gaussian_round(
    u: &[QuatVector],
    v: &[QuatVector],
    m: &QuatMatrix,
    samples: usize,
    seed: u64,
) -> Result<RoundingResult> {
    if m.shape() != (u.len(), v.len()) {
        return Err(Error::DimensionMismatch(format!(
            "matrix {:?} vs {} row and {} column vectors",
            m.shape(),
            u.len(),
            v.len()
        )));
    }
    if samples == 0 || u.is_empty() || v.is_empty() {
        return Err(Error::InvalidInput(
            "need at least one sample and one vector on each side".into(),
        ));
    }
    let dim = u[0].len();
    for x in u.iter().chain(v.iter()) {
        if x.len() != dim {
            return Err(Error::DimensionMismatch(
                "Gram vectors differ in length".into(),
            ));
        }
        check_unit(x, "Gram vector")?;
    }
    let sampler = QuatGaussianSampler::new(dim, seed)?;
    let round = |z: &QuatVector| -> (Vec<Quaternion>, Vec<Quaternion>) {
        let e = u
            .iter()
            .map(|x| {
                z.inner(x)
                    .expect("same length")
                    .sign(SignConvention::ZeroMapsToOne)
            })
            .collect();
        let d = v
            .iter()
            .map(|x| {
                z.inner(x)
                    .expect("same length")
                    .sign(SignConvention::ZeroMapsToOne)
            })
            .collect();
        (e, d)
    };
    type Best = (f64, Vec<Quaternion>, Vec<Quaternion>);
    let parts: Vec<(f64, Best)> = chunk_lengths(samples)
        .par_iter()
        .enumerate()
        .map(|(c, &len)| {
            let mut rng = sampler.chunk_rng(c);
            let mut sum = 0.0;
            let mut best: Best = (f64::NEG_INFINITY, vec![], vec![]);
            for _ in 0..len {
                let z = sampler.draw(&mut rng);
                let (e, d) = round(&z);
                let val = inf1_objective(m, &e, &d);
                sum += val;
                if val > best.0 {
                    best = (val, e, d);
                }
            }
            (sum, best)
        })
        .collect();
    let mut sum = 0.0;
    let mut best: Best = (f64::NEG_INFINITY, vec![], vec![]);
    for (s, b) in parts {
        sum += s;
        if b.0 > best.0 {
            best = b;
        }
    }
    let mut expected = 0.0;
    for (i, x) in u.iter().enumerate() {
        for (j, y) in v.iter().enumerate() {
            let g = x.inner(y)?;
            expected += (m[(i, j)] * g).re() * eval_fh(g.norm().min(1.0))?;
        }
    }
    Ok(RoundingResult {
        best_value: best.0,
        eps: best.1,
        delta: best.2,
        mean_value: sum / samples as f64,
        expected_value: expected,
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fh_endpoints() {
        assert!((eval_fh(0.0).unwrap() - 9.0 * PI / 32.0).abs() < 1e-12);
        assert!((eval_fh(1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(eval_fh(1.5).is_err());
    }

    #[test]
    fn sampling_is_reproducible_and_thread_independent() {
        let a = sample(2, 5000, 7).unwrap();
        let b = sample(2, 5000, 7).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let e1 = pool.install(|| mc_sign_formula(Quaternion::I, 20_000, 3).unwrap());
        let e2 = mc_sign_formula(Quaternion::I, 20_000, 3).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn sign_formula_of_zero_vanishes() {
        let e = mc_sign_formula(Quaternion::ZERO, 10_000, 1).unwrap();
        assert_eq!(e.estimate, Quaternion::ZERO);
        assert!(mc_sign_formula(Quaternion::ONE, 100, 1).is_err());
    }
}
