//! Quaternion-structured SDPs: the Grothendieck norm of `M`, the `γ`/`Γ`
//! norms of a self-adjoint `A`, the complex Grothendieck norm, and the
//! comparison of the real PSD case with the `θ` ascent.
//!
//! A quaternion correlation matrix `G = Z + W·j` (`N × N`) is represented by
//! the Hermitian `H = Ĉ(G) = [[Z, W], [−W̄, Z̄]]`, and `H ⪰ 0` iff `G ⪰ 0`.
//! The block structure is imposed as linear equalities on `H`. Objectives
//! use the entrywise conjugate `Ā`, since `½ tr(Ĉ(Ā) Ĉ(G)) = Re Σ aᵢⱼ gᵢⱼ`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{solve, SdpConstraint, SdpProblem, SdpSolution};
use crate::error::{Error, Result};
use crate::linalg::{QuatMatrix, QuatVector, SelfAdjointQuatMatrix};
use crate::norms::theta_lower;
use crate::quat::Complex;

/// Relative tolerance used for every program here.
pub const SDP_TOL: f64 = 1e-9;

/// Equalities forcing a Hermitian `2N × 2N` matrix to have the form `Ĉ(G)`
/// with `G` self-adjoint: `Z₂ = Z̄₁` for the diagonal blocks and `W` antisymmetric.
pub fn structure_constraints(n: usize) -> Vec<SdpConstraint> {
    let mut out = vec![];
    for i in 0..n {
        out.push(
            SdpConstraint::new(0.0)
                .re_entry(n + i, n + i, 1.0)
                .re_entry(i, i, -1.0),
        );
        out.push(SdpConstraint::new(0.0).re_entry(i, n + i, 1.0));
        out.push(SdpConstraint::new(0.0).im_entry(i, n + i, 1.0));
        for j in i + 1..n {
            out.push(
                SdpConstraint::new(0.0)
                    .re_entry(n + i, n + j, 1.0)
                    .re_entry(i, j, -1.0),
            );
            out.push(
                SdpConstraint::new(0.0)
                    .im_entry(n + i, n + j, 1.0)
                    .im_entry(i, j, 1.0),
            );
            out.push(
                SdpConstraint::new(0.0)
                    .re_entry(i, n + j, 1.0)
                    .re_entry(j, n + i, 1.0),
            );
            out.push(
                SdpConstraint::new(0.0)
                    .im_entry(i, n + j, 1.0)
                    .im_entry(j, n + i, 1.0),
            );
        }
    }
    out
}

fn unit_diagonal(n: usize) -> Vec<SdpConstraint> {
    (0..n)
        .map(|i| SdpConstraint::new(1.0).re_entry(i, i, 1.0))
        .collect()
}

/// Largest violation of the `Ĉ(G)` block structure.
pub fn structure_residual(h: &DMatrix<Complex>) -> f64 {
    let n = h.nrows() / 2;
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            r = r.max((h[(n + i, n + j)] - h[(i, j)].conj()).norm());
            r = r.max((h[(i, n + j)] + h[(j, n + i)]).norm());
        }
    }
    r
}

/// Reads the quaternion matrix `G` off `H = Ĉ(G)`, symmetrized.
fn quaternion_gram(h: &DMatrix<Complex>) -> Result<SelfAdjointQuatMatrix> {
    let g = QuatMatrix::from_hat_c(h)?;
    let sym = g.add(&g.adjoint())?.scale(0.5);
    SelfAdjointQuatMatrix::new(sym)
}

/// `A(M) = [[0, M], [M*, 0]]`.
fn bipartite(m: &QuatMatrix) -> Result<QuatMatrix> {
    let (r, c) = m.shape();
    let adj = m.adjoint();
    Ok(QuatMatrix::from_fn(r + c, r + c, |i, j| {
        if i < r && j >= r {
            m[(i, j - r)]
        } else if i >= r && j < r {
            adj[(i - r, j)]
        } else {
            Default::default()
        }
    }))
}

/// Solution of the quaternion Grothendieck program.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrothendieckSdp {
    /// `max Re Σ Mᵢⱼ ⟨xᵢ, yⱼ⟩` at the returned Gram matrix.
    pub value: f64,
    /// Dual objective.
    pub upper: f64,
    /// Optimal Gram matrix of `(x₁, …, x_m, y₁, …, y_n)`.
    pub gram: QuatMatrix,
    pub structure_residual: f64,
    pub solution: SdpSolution,
}

impl GrothendieckSdp {
    /// Unit vectors `xᵢ`, `yⱼ` realizing the Gram matrix.
    pub fn vectors(&self, rows: usize) -> Result<(Vec<QuatVector>, Vec<QuatVector>)> {
        let g = SelfAdjointQuatMatrix::new(self.gram.clone())?;
        let v: Vec<QuatVector> = g
            .gram_vectors()?
            .into_iter()
            .map(|x| x.scale(1.0 / x.norm()))
            .collect();
        let (a, b) = v.split_at(rows);
        Ok((a.to_vec(), b.to_vec()))
    }
}

/// `‖M‖_{G,ℍ} = max ¼ tr(Ĉ(A(M̄)) H)` over structured `H ⪰ 0` with unit diagonal.
pub fn grothendieck_sdp(m: &QuatMatrix) -> Result<GrothendieckSdp> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let n = r + c;
    let a = bipartite(&m.conj())?;
    let objective = a.embed_hat_c().map(|z| z * 0.25);
    let mut equalities = structure_constraints(n);
    equalities.extend(unit_diagonal(n));
    let p = SdpProblem {
        dim: 2 * n,
        objective,
        equalities,
        inequalities: vec![],
    };
    let s = solve(&p, SDP_TOL)?;
    let gram = quaternion_gram(&s.x)?.into_matrix();
    Ok(GrothendieckSdp {
        value: s.value,
        upper: s.dual_value,
        gram,
        structure_residual: structure_residual(&s.x),
        solution: s,
    })
}

/// Solution of a `γ` or `Γ` program.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSdp {
    /// `max(plus, minus)`.
    pub value: f64,
    /// `max Re Σ aᵢⱼ gᵢⱼ`.
    pub plus: f64,
    /// `max −Re Σ aᵢⱼ gᵢⱼ`.
    pub minus: f64,
    /// Largest dual objective of the two solves.
    pub upper: f64,
    /// Gram matrix attaining `value`.
    pub gram: QuatMatrix,
    pub structure_residual: f64,
}

fn gamma_program(a: &SelfAdjointQuatMatrix, ball: bool) -> Result<GammaSdp> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let base = a.matrix().conj().embed_hat_c().map(|z| z * 0.5);
    let mut equalities = structure_constraints(n);
    let mut inequalities = vec![];
    if ball {
        inequalities = unit_diagonal(n);
    } else {
        equalities.extend(unit_diagonal(n));
    }
    let run = |sign: f64| -> Result<SdpSolution> {
        let p = SdpProblem {
            dim: 2 * n,
            objective: base.map(|z| z * sign),
            equalities: equalities.clone(),
            inequalities: inequalities.clone(),
        };
        solve(&p, SDP_TOL)
    };
    let sp = run(1.0)?;
    let sm = run(-1.0)?;
    let best = if sp.value >= sm.value { &sp } else { &sm };
    Ok(GammaSdp {
        value: sp.value.max(sm.value),
        plus: sp.value,
        minus: sm.value,
        upper: sp.dual_value.max(sm.dual_value),
        gram: quaternion_gram(&best.x)?.into_matrix(),
        structure_residual: structure_residual(&best.x),
    })
}

/// `‖A‖_γ = max |Re Σ aᵢⱼ gᵢⱼ|` over quaternion correlation matrices `G`.
pub fn gamma_sdp(a: &SelfAdjointQuatMatrix) -> Result<GammaSdp> {
    gamma_program(a, false)
}

/// `‖A‖_Γ`, the same maximum over `G ⪰ 0` with `gᵢᵢ ≤ 1`.
pub fn big_gamma_sdp(a: &SelfAdjointQuatMatrix) -> Result<GammaSdp> {
    gamma_program(a, true)
}

/// `max Re Σ M̃ᵢⱼ ⟨xᵢ, yⱼ⟩` over complex unit vectors: the complex
/// Grothendieck program, an upper bound for `‖M̃‖_{∞,1,ℂ}`.
pub fn complex_grothendieck_sdp(mt: &DMatrix<Complex>) -> Result<SdpSolution> {
    let (r, c) = mt.shape();
    let n = r + c;
    let zero = Complex::new(0.0, 0.0);
    let objective = DMatrix::from_fn(n, n, |i, j| {
        if i < r && j >= r {
            mt[(i, j - r)].conj() * 0.5
        } else if i >= r && j < r {
            mt[(j, i - r)] * 0.5
        } else {
            zero
        }
    });
    let p = SdpProblem {
        dim: n,
        objective,
        equalities: unit_diagonal(n),
        inequalities: vec![],
    };
    solve(&p, SDP_TOL)
}

/// SDP value against the `θ` ascent for a real PSD matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NesterovReport {
    pub sdp_value: f64,
    pub theta_lower: f64,
    pub ratio: f64,
    /// `32/(9π)`.
    pub bound: f64,
}

/// PSD tolerance for [`nesterov_check`].
pub const NESTEROV_PSD_TOL: f64 = 1e-9;

pub fn nesterov_check(a: &DMatrix<f64>, restarts: usize, seed: u64) -> Result<NesterovReport> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    let lmin = crate::linalg::sym_min_eigenvalue(a);
    if lmin < -NESTEROV_PSD_TOL {
        return Err(Error::NotPsd(lmin));
    }
    let q = SelfAdjointQuatMatrix::new(crate::linalg::real_to_quat(a))?;
    let g = gamma_sdp(&q)?;
    let t = theta_lower(&q, restarts, seed)?;
    Ok(NesterovReport {
        sdp_value: g.value,
        theta_lower: t.lower,
        ratio: g.value / t.lower,
        bound: crate::series::lambda(),
    })
}
