//! Lower bounds for the (∞,1), θ and Θ norms of quaternion matrices by
//! alternating or coordinate ascent, the complex matrix `M̃` comparing the
//! quaternion and complex (∞,1) norms, and the decomposition of a
//! diagonally dominant matrix into a nonnegative part and a Laplacian.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{QuatMatrix, SelfAdjointQuatMatrix};
use crate::quat::{Complex, Quaternion, SignConvention};
use crate::random::unit_quaternion;

/// Default number of random restarts.
pub const DEFAULT_RESTARTS: usize = 64;
/// A sweep improving the objective by less than this ends the ascent.
pub const SWEEP_TOL: f64 = 1e-10;
/// Sweep limit per restart.
pub const MAX_SWEEPS: usize = 500;

/// The maximizing assignment behind a lower bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// Row scalars `εᵢ` and column scalars `δⱼ`.
    Bipartite {
        eps: Vec<Quaternion>,
        delta: Vec<Quaternion>,
    },
    /// Scalars `δᵢ` and the sign `s` with value `s·Re Σ aᵢⱼ δ̄ᵢδⱼ`.
    Symmetric { delta: Vec<Quaternion>, sign: f64 },
    /// Complex unit scalars for `Re(eᵀ M d)`.
    Complex {
        #[serde(with = "complex_vec")]
        e: Vec<Complex>,
        #[serde(with = "complex_vec")]
        d: Vec<Complex>,
    },
}

/// A lower bound from an explicit feasible assignment, optionally paired
/// with an upper bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub lower: f64,
    pub upper: Option<f64>,
    pub witness: Witness,
    pub restarts_used: usize,
    pub seed: u64,
}

/// Value and scalars of one ascent restart.
type Run<T> = (f64, (Vec<T>, Vec<T>));

/// `Re Σ Mᵢⱼ ε̄ᵢ δⱼ`.
pub fn inf1_objective(m: &QuatMatrix, eps: &[Quaternion], delta: &[Quaternion]) -> f64 {
    let mut s = 0.0;
    for (i, e) in eps.iter().enumerate() {
        let ec = e.conj();
        for (j, d) in delta.iter().enumerate() {
            s += (m[(i, j)] * ec * *d).re();
        }
    }
    s
}

/// `Re Σ aᵢⱼ δ̄ᵢ δⱼ`.
pub fn symmetric_objective(a: &QuatMatrix, delta: &[Quaternion]) -> f64 {
    let mut s = 0.0;
    for (i, di) in delta.iter().enumerate() {
        let dc = di.conj();
        for (j, dj) in delta.iter().enumerate() {
            s += (a[(i, j)] * dc * *dj).re();
        }
    }
    s
}

fn restart_rng(seed: u64, r: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    rng
}

/// Deterministic maximum over restarts; ties go to the lowest index.
fn best_of<T: Send>(items: Vec<(f64, T)>) -> (f64, T) {
    let mut best: Option<(f64, T)> = None;
    for (v, t) in items {
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, t));
        }
    }
    best.expect("at least one restart")
}

/// Trace of one ascent run.
#[derive(Clone, Debug, PartialEq)]
pub struct AscentTrace {
    pub eps: Vec<Quaternion>,
    pub delta: Vec<Quaternion>,
    /// Objective after each half-sweep.
    pub values: Vec<f64>,
}

/// Alternating ascent for `Re Σ Mᵢⱼ ε̄ᵢ δⱼ` from the given `ε`.
pub fn inf1_ascent_from(m: &QuatMatrix, eps0: Vec<Quaternion>) -> AscentTrace {
    let (rows, cols) = m.shape();
    let mut eps = eps0;
    let mut delta = vec![Quaternion::ONE; cols];
    let mut values = vec![];
    let mut last = f64::NEG_INFINITY;
    for _ in 0..MAX_SWEEPS {
        // δⱼ maximizes Re(δⱼ sⱼ) with sⱼ = Σᵢ Mᵢⱼ ε̄ᵢ.
        for (j, d) in delta.iter_mut().enumerate() {
            let s: Quaternion = (0..rows).map(|i| m[(i, j)] * eps[i].conj()).sum();
            *d = s.conj().sign(SignConvention::ZeroMapsToOne);
        }
        values.push(inf1_objective(m, &eps, &delta));
        // εᵢ maximizes Re(ε̄ᵢ tᵢ) with tᵢ = Σⱼ δⱼ Mᵢⱼ.
        for (i, e) in eps.iter_mut().enumerate() {
            let t: Quaternion = (0..cols).map(|j| delta[j] * m[(i, j)]).sum();
            *e = t.sign(SignConvention::ZeroMapsToOne);
        }
        let v = inf1_objective(m, &eps, &delta);
        values.push(v);
        if v - last < SWEEP_TOL {
            break;
        }
        last = v;
    }
    AscentTrace { eps, delta, values }
}

/// Lower bound for `‖M‖_{∞,1,ℍ}` by alternating ascent from `restarts`
/// random starts.
pub fn inf1_lower(m: &QuatMatrix, restarts: usize, seed: u64) -> Result<NormEstimate> {
    if restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let runs: Vec<Run<Quaternion>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = restart_rng(seed, r);
            let eps0 = (0..rows).map(|_| unit_quaternion(&mut rng)).collect();
            let t = inf1_ascent_from(m, eps0);
            (inf1_objective(m, &t.eps, &t.delta), (t.eps, t.delta))
        })
        .collect();
    let (lower, (eps, delta)) = best_of(runs);
    Ok(NormEstimate {
        lower,
        upper: None,
        witness: Witness::Bipartite { eps, delta },
        restarts_used: restarts,
        seed,
    })
}

/// Feasible set for the symmetric ascent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetricKind {
    /// `|δᵢ| = 1`.
    Theta,
    /// `|δᵢ| ≤ 1`.
    BigTheta,
}

/// Coordinate ascent for `Re Σ aᵢⱼ δ̄ᵢ δⱼ` from `delta0`.
///
/// With the other coordinates fixed the objective is
/// `aₖₖ|δₖ|² + 2 Re(δ̄ₖ bₖ) + const`, `bₖ = Σ_{j≠k} δⱼ aₖⱼ`. On the sphere the
/// maximizer is `sign(bₖ)`; on the ball it is `t·sign(bₖ)` with `t = 1` when
/// `aₖₖ ≥ 0` and `t = min(1, |bₖ|/(−aₖₖ))` otherwise.
pub fn symmetric_ascent_from(
    a: &QuatMatrix,
    kind: SymmetricKind,
    delta0: Vec<Quaternion>,
) -> (Vec<Quaternion>, Vec<f64>) {
    let n = a.rows();
    let mut delta = delta0;
    let mut values = vec![symmetric_objective(a, &delta)];
    for _ in 0..MAX_SWEEPS {
        for k in 0..n {
            let b: Quaternion = (0..n)
                .filter(|&j| j != k)
                .map(|j| delta[j] * a[(k, j)])
                .sum();
            let akk = a[(k, k)].re();
            let dir = b.sign(SignConvention::ZeroMapsToOne);
            let t = match kind {
                SymmetricKind::Theta => 1.0,
                SymmetricKind::BigTheta => {
                    if akk >= 0.0 {
                        1.0
                    } else {
                        (b.norm() / -akk).min(1.0)
                    }
                }
            };
            delta[k] = dir * t;
        }
        let v = symmetric_objective(a, &delta);
        let last = *values.last().expect("nonempty");
        values.push(v);
        if v - last < SWEEP_TOL {
            break;
        }
    }
    (delta, values)
}

fn symmetric_lower(
    a: &SelfAdjointQuatMatrix,
    kind: SymmetricKind,
    restarts: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    let n = a.dim();
    let neg = a.matrix().scale(-1.0);
    let runs: Vec<(f64, (Vec<Quaternion>, f64))> = (0..2 * restarts)
        .into_par_iter()
        .map(|r| {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            let mat = if sign > 0.0 { a.matrix() } else { &neg };
            let mut rng = restart_rng(seed, r / 2);
            let d0 = (0..n).map(|_| unit_quaternion(&mut rng)).collect();
            let (d, _) = symmetric_ascent_from(mat, kind, d0);
            (symmetric_objective(mat, &d), (d, sign))
        })
        .collect();
    let (lower, (delta, sign)) = best_of(runs);
    Ok(NormEstimate {
        lower: lower.max(0.0),
        upper: None,
        witness: Witness::Symmetric { delta, sign },
        restarts_used: restarts,
        seed,
    })
}

/// Lower bound for `‖A‖_θ = max |Re Σ aᵢⱼ δ̄ᵢδⱼ|` over unit `δᵢ`.
pub fn theta_lower(a: &SelfAdjointQuatMatrix, restarts: usize, seed: u64) -> Result<NormEstimate> {
    symmetric_lower(a, SymmetricKind::Theta, restarts, seed)
}

/// Lower bound for `‖A‖_Θ`, the same maximum over `|δᵢ| ≤ 1`.
pub fn big_theta_lower(
    a: &SelfAdjointQuatMatrix,
    restarts: usize,
    seed: u64,
) -> Result<NormEstimate> {
    symmetric_lower(a, SymmetricKind::BigTheta, restarts, seed)
}

/// `C(a)ᵀ = [[z, −w̄], [w, z̄]]` for `a = z + w·j`.
fn c_transpose(a: Quaternion) -> [[Complex; 2]; 2] {
    let (z, w) = a.complex_pair();
    [[z, -w.conj()], [w, z.conj()]]
}

/// `M̃ = (C(Mᵢⱼ)ᵀ)`, a `2m × 2n` complex matrix with
/// `Re Σ Mᵢⱼ ε̄ᵢ δⱼ = Re(eᵀ M̃ d)` for `e = (z̄ᵢ, w̄ᵢ)ᵢ`, `d = (uⱼ, vⱼ)ⱼ`.
pub fn build_tilde_m(m: &QuatMatrix) -> DMatrix<Complex> {
    let (rows, cols) = m.shape();
    let mut out = DMatrix::from_element(2 * rows, 2 * cols, Complex::new(0.0, 0.0));
    for i in 0..rows {
        for j in 0..cols {
            let b = c_transpose(m[(i, j)]);
            for (r, row) in b.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    out[(2 * i + r, 2 * j + c)] = *v;
                }
            }
        }
    }
    out
}

/// `e = (z̄₁, w̄₁, …)` and `d = (u₁, v₁, …)` for `εᵢ = zᵢ + wᵢj`, `δⱼ = uⱼ + vⱼj`.
pub fn tilde_vectors(eps: &[Quaternion], delta: &[Quaternion]) -> (Vec<Complex>, Vec<Complex>) {
    let e = eps
        .iter()
        .flat_map(|q| {
            let (z, w) = q.complex_pair();
            [z.conj(), w.conj()]
        })
        .collect();
    let d = delta
        .iter()
        .flat_map(|q| {
            let (u, v) = q.complex_pair();
            [u, v]
        })
        .collect();
    (e, d)
}

/// `Re(eᵀ M d)`.
pub fn complex_bilinear(m: &DMatrix<Complex>, e: &[Complex], d: &[Complex]) -> f64 {
    let mut s = Complex::new(0.0, 0.0);
    for (i, ei) in e.iter().enumerate() {
        for (j, dj) in d.iter().enumerate() {
            s += ei * m[(i, j)] * dj;
        }
    }
    s.re
}

fn unit_complex(z: Complex) -> Complex {
    let n = z.norm();
    if n == 0.0 {
        Complex::new(1.0, 0.0)
    } else {
        z / n
    }
}

/// Alternating ascent for `Re(eᵀ M d)` over complex unit scalars.
pub fn complex_ascent_from(
    m: &DMatrix<Complex>,
    e0: Vec<Complex>,
) -> (Vec<Complex>, Vec<Complex>, f64) {
    let (rows, cols) = m.shape();
    let mut e = e0;
    let mut d = vec![Complex::new(1.0, 0.0); cols];
    let mut last = f64::NEG_INFINITY;
    for _ in 0..MAX_SWEEPS {
        for (j, dj) in d.iter_mut().enumerate() {
            let s: Complex = (0..rows).map(|i| e[i] * m[(i, j)]).sum();
            *dj = unit_complex(s.conj());
        }
        for (i, ei) in e.iter_mut().enumerate() {
            let t: Complex = (0..cols).map(|j| m[(i, j)] * d[j]).sum();
            *ei = unit_complex(t.conj());
        }
        let v = complex_bilinear(m, &e, &d);
        if v - last < SWEEP_TOL {
            break;
        }
        last = v;
    }
    let v = complex_bilinear(m, &e, &d);
    (e, d, v)
}

/// Lower bound for `‖M‖_{∞,1,ℂ}` of a complex matrix; the first start may
/// be supplied, the rest are random phases.
pub fn complex_inf1_lower(
    m: &DMatrix<Complex>,
    start: Option<Vec<Complex>>,
    restarts: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    let rows = m.nrows();
    let runs: Vec<Run<Complex>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let e0 = match (&start, r) {
                (Some(s), 0) => s.iter().map(|z| unit_complex(*z)).collect(),
                _ => {
                    let mut rng = restart_rng(seed, r);
                    (0..rows)
                        .map(|_| {
                            let q = unit_quaternion(&mut rng);
                            unit_complex(Complex::new(q.a0, q.a1))
                        })
                        .collect()
                }
            };
            let (e, d, v) = complex_ascent_from(m, e0);
            (v, (e, d))
        })
        .collect();
    let (lower, (e, d)) = best_of(runs);
    Ok(NormEstimate {
        lower,
        upper: None,
        witness: Witness::Complex { e, d },
        restarts_used: restarts,
        seed,
    })
}

/// `A = P + L` for a real symmetric diagonally dominant `A`: `L` is the
/// Laplacian carrying the negative off-diagonal entries, `P ≥ 0` entrywise.
#[derive(Clone, Debug, PartialEq)]
pub struct DdDecomposition {
    pub p: DMatrix<f64>,
    pub l: DMatrix<f64>,
}

/// Symmetry tolerance for [`dd_decompose`].
pub const DD_SYMMETRY_TOL: f64 = 1e-12;

pub fn dd_decompose(a: &DMatrix<f64>) -> Result<DdDecomposition> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} is not square",
            n,
            a.ncols()
        )));
    }
    for i in 0..n {
        for j in 0..n {
            if (a[(i, j)] - a[(j, i)]).abs() > DD_SYMMETRY_TOL {
                return Err(Error::NotSelfAdjoint((a[(i, j)] - a[(j, i)]).abs()));
            }
        }
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
        if a[(i, i)] < off {
            return Err(Error::NotDiagonallyDominant(i));
        }
    }
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j && a[(i, j)] < 0.0 {
                l[(i, j)] = a[(i, j)];
                l[(i, i)] -= a[(i, j)];
            }
        }
    }
    Ok(DdDecomposition { p: a - &l, l })
}

mod complex_vec {
    use super::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|z| [z.re, z.im])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex>, D::Error> {
        let v: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|z| Complex::new(z[0], z[1])).collect())
    }
}
