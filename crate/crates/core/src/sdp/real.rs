//! Primal-dual interior-point method for real SDPs with one dense
//! symmetric block and one nonnegative diagonal block:
//!
//! `max ⟨C, X⟩ + c_dᵀx_d` s.t. `⟨Aₖ, X⟩ + aₖᵀx_d = bₖ`, `X ⪰ 0`, `x_d ≥ 0`,
//!
//! with dual `min bᵀy` s.t. `Σ yₖAₖ − C = Z ⪰ 0`, `Σ yₖaₖ − c_d = z_d ≥ 0`.
//! Search directions are the HKM (`XZ`-linearized, symmetrized) directions
//! with Mehrotra's predictor-corrector; the start is `X = I`, `Z = I`, `y = 0`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sym_min_eigenvalue;

/// One constraint row `⟨Aₖ, X⟩ + aₖᵀx_d = bₖ`.
///
/// `dense` lists terms `(a, b, w)` of `Aₖ = Σ w e_a e_bᵀ`; a symmetric entry
/// off the diagonal appears once for each of `(a, b)` and `(b, a)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RealConstraint {
    pub dense: Vec<(usize, usize, f64)>,
    pub diag: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl RealConstraint {
    /// Adds `v` at `(a, b)` and `(b, a)` of the dense part.
    pub fn push_sym(&mut self, a: usize, b: usize, v: f64) {
        if v == 0.0 {
            return;
        }
        self.dense.push((a, b, v));
        if a != b {
            self.dense.push((b, a, v));
        }
    }

    fn apply(&self, x: &DMatrix<f64>, xd: &[f64]) -> f64 {
        self.dense
            .iter()
            .map(|&(a, b, w)| w * x[(a, b)])
            .sum::<f64>()
            + self.diag.iter().map(|&(i, w)| w * xd[i]).sum::<f64>()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealProblem {
    pub n: usize,
    pub n_diag: usize,
    pub c: Vec<f64>,
    pub c_diag: Vec<f64>,
    pub constraints: Vec<RealConstraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Relative gap and infeasibility tolerance.
    pub tol: f64,
    pub max_iter: usize,
    /// Fraction of the step to the cone boundary.
    pub step_fraction: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-9,
            max_iter: 200,
            step_fraction: 0.98,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealSolution {
    pub x: DMatrix<f64>,
    pub x_diag: Vec<f64>,
    pub y: DVector<f64>,
    pub z: DMatrix<f64>,
    pub z_diag: Vec<f64>,
    pub primal_value: f64,
    pub dual_value: f64,
    pub iterations: usize,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
}

/// `(ΔX, ΔX_diag, Δy, ΔZ, ΔZ_diag)`.
type Direction = (DMatrix<f64>, Vec<f64>, DVector<f64>, DMatrix<f64>, Vec<f64>);

/// Largest `α` with `X + αΔX ⪰ 0`, or infinity.
fn max_step_psd(x: &DMatrix<f64>, dx: &DMatrix<f64>) -> Result<f64> {
    if x.nrows() == 0 {
        return Ok(f64::INFINITY);
    }
    let l = x
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numerical("iterate lost positive definiteness".into()))?;
    let linv = l
        .l()
        .try_inverse()
        .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
    let s = &linv * dx * linv.transpose();
    let s = (&s + s.transpose()) * 0.5;
    if !s.iter().all(|v| v.is_finite()) {
        return Err(Error::Numerical("non-finite search direction".into()));
    }
    let lmin = sym_min_eigenvalue(&s);
    Ok(if lmin >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / lmin
    })
}

/// Shrinks `α` until the projected `X + αΔX` has a Cholesky factor; rounding
/// can leave a step of `step_fraction` times the boundary distance singular.
fn backtrack(
    x: &DMatrix<f64>,
    dx: &DMatrix<f64>,
    mut alpha: f64,
    project: &dyn Fn(&DMatrix<f64>) -> DMatrix<f64>,
) -> Result<(DMatrix<f64>, f64)> {
    for _ in 0..BACKTRACK_STEPS {
        let next = project(&sym(x + dx * alpha));
        if next.nrows() == 0 || next.clone().cholesky().is_some() {
            return Ok((next, alpha));
        }
        alpha *= 0.5;
    }
    Err(Error::Numerical(
        "iterate lost positive definiteness".into(),
    ))
}

/// Halvings tried by [`backtrack`] before giving up.
const BACKTRACK_STEPS: usize = 40;

fn max_step_diag(x: &[f64], dx: &[f64]) -> f64 {
    x.iter()
        .zip(dx)
        .filter(|(_, &d)| d < 0.0)
        .map(|(&v, &d)| -v / d)
        .fold(f64::INFINITY, f64::min)
}

fn sym(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

struct Iterate<'a> {
    p: &'a RealProblem,
    c: DMatrix<f64>,
}

impl<'a> Iterate<'a> {
    /// `Aᵀy` as (dense, diagonal).
    fn adjoint(&self, y: &DVector<f64>) -> (DMatrix<f64>, Vec<f64>) {
        let mut m = DMatrix::zeros(self.p.n, self.p.n);
        let mut d = vec![0.0; self.p.n_diag];
        for (k, con) in self.p.constraints.iter().enumerate() {
            for &(a, b, w) in &con.dense {
                m[(a, b)] += y[k] * w;
            }
            for &(i, w) in &con.diag {
                d[i] += y[k] * w;
            }
        }
        (m, d)
    }

    fn apply(&self, x: &DMatrix<f64>, xd: &[f64]) -> DVector<f64> {
        DVector::from_iterator(
            self.p.constraints.len(),
            self.p.constraints.iter().map(|c| c.apply(x, xd)),
        )
    }

    /// Schur matrix `M_kl = tr(Aₖ X A_l Z⁻¹) + Σ aₖ a_l x_d/z_d`.
    fn schur(&self, x: &DMatrix<f64>, g: &DMatrix<f64>, xd: &[f64], zd: &[f64]) -> DMatrix<f64> {
        let m = self.p.constraints.len();
        let mut s = DMatrix::zeros(m, m);
        for k in 0..m {
            let ck = &self.p.constraints[k];
            for l in k..m {
                let cl = &self.p.constraints[l];
                let mut v = 0.0;
                for &(a, b, w) in &ck.dense {
                    for &(a2, b2, w2) in &cl.dense {
                        v += w * w2 * x[(b, a2)] * g[(b2, a)];
                    }
                }
                for &(i, w) in &ck.diag {
                    for &(i2, w2) in &cl.diag {
                        if i == i2 {
                            v += w * w2 * xd[i] / zd[i];
                        }
                    }
                }
                s[(k, l)] = v;
                s[(l, k)] = v;
            }
        }
        s
    }
}

/// Solves the problem to relative tolerance `opts.tol`.
///
/// `project` is applied to the dense parts of `X` and `Z` after every step;
/// it must be an orthogonal projection under which the data are invariant.
pub fn solve_real(
    p: &RealProblem,
    opts: &SolverOptions,
    project: &dyn Fn(&DMatrix<f64>) -> DMatrix<f64>,
) -> Result<RealSolution> {
    let n = p.n;
    let nd = p.n_diag;
    if p.c.len() != n * n || p.c_diag.len() != nd {
        return Err(Error::DimensionMismatch("objective size".into()));
    }
    for con in &p.constraints {
        if con.dense.iter().any(|&(a, b, _)| a >= n || b >= n)
            || con.diag.iter().any(|&(i, _)| i >= nd)
        {
            return Err(Error::DimensionMismatch(
                "constraint index out of range".into(),
            ));
        }
        if !con.rhs.is_finite()
            || con.dense.iter().any(|t| !t.2.is_finite())
            || con.diag.iter().any(|t| !t.1.is_finite())
        {
            return Err(Error::InvalidInput("non-finite constraint data".into()));
        }
    }
    let it = Iterate {
        p,
        c: DMatrix::from_column_slice(n, n, &p.c),
    };
    let m = p.constraints.len();
    let b = DVector::from_iterator(m, p.constraints.iter().map(|c| c.rhs));
    let cnorm = (it.c.norm_squared() + p.c_diag.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let bnorm = b.norm();
    if !cnorm.is_finite() || !bnorm.is_finite() {
        return Err(Error::Numerical("problem data overflows".into()));
    }
    let dim = (n + nd) as f64;

    let mut x = DMatrix::<f64>::identity(n, n);
    let mut xd = vec![1.0; nd];
    let mut z = DMatrix::<f64>::identity(n, n);
    let mut zd = vec![1.0; nd];
    let mut y = DVector::<f64>::zeros(m);

    for iter in 0..=opts.max_iter {
        let (aty, aty_d) = it.adjoint(&y);
        let rp = &b - it.apply(&x, &xd);
        let rd = &it.c - &aty + &z;
        let rd_d: Vec<f64> = (0..nd).map(|i| p.c_diag[i] - aty_d[i] + zd[i]).collect();
        let pobj = it.c.dot(&x) + p.c_diag.iter().zip(&xd).map(|(a, b)| a * b).sum::<f64>();
        let dobj = b.dot(&y);
        let pinf = rp.norm() / (1.0 + bnorm);
        let dinf =
            (rd.norm_squared() + rd_d.iter().map(|v| v * v).sum::<f64>()).sqrt() / (1.0 + cnorm);
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        if pinf < opts.tol && dinf < opts.tol && gap < opts.tol {
            return Ok(RealSolution {
                x,
                x_diag: xd,
                y,
                z,
                z_diag: zd,
                primal_value: pobj,
                dual_value: dobj,
                iterations: iter,
                primal_infeasibility: pinf,
                dual_infeasibility: dinf,
            });
        }
        if iter == opts.max_iter {
            break;
        }
        let xz = x.dot(&z) + xd.iter().zip(&zd).map(|(a, b)| a * b).sum::<f64>();
        let mu = xz / dim;
        let g = z
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Numerical("dual iterate lost positive definiteness".into()))?
            .inverse();
        let gd: Vec<f64> = zd.iter().map(|v| 1.0 / v).collect();
        let schur = it.schur(&x, &g, &xd, &zd);
        let chol = schur.clone().cholesky();
        let lu = if chol.is_none() {
            Some(schur.clone().lu())
        } else {
            None
        };
        let solve_schur = |r: &DVector<f64>| -> Result<DVector<f64>> {
            match (&chol, &lu) {
                (Some(c), _) => Ok(c.solve(r)),
                (None, Some(l)) => l
                    .solve(r)
                    .ok_or_else(|| Error::Numerical("singular Schur complement".into())),
                _ => unreachable!(),
            }
        };
        let xrdg = &x * &rd * &g;
        let xrdg_d: Vec<f64> = (0..nd).map(|i| xd[i] * rd_d[i] * gd[i]).collect();
        // Direction for a complementarity target K (dense, diagonal).
        let direction = |k: &DMatrix<f64>, kd: &[f64]| -> Result<Direction> {
            let t = k + &xrdg;
            let td: Vec<f64> = (0..nd).map(|i| kd[i] + xrdg_d[i]).collect();
            let rhs = it.apply(&t, &td) - &rp;
            let dy = solve_schur(&rhs)?;
            let (a_dy, a_dy_d) = it.adjoint(&dy);
            let dz = &a_dy - &rd;
            let dzd: Vec<f64> = (0..nd).map(|i| a_dy_d[i] - rd_d[i]).collect();
            let dx = sym(k - &x * &dz * &g);
            let dxd: Vec<f64> = (0..nd).map(|i| kd[i] - xd[i] * dzd[i] * gd[i]).collect();
            Ok((dx, dxd, dy, dz, dzd))
        };
        let neg_x = -&x;
        let neg_xd: Vec<f64> = xd.iter().map(|v| -v).collect();
        let (dxa, dxad, _, dza, dzad) = direction(&neg_x, &neg_xd)?;
        let ap = 1f64.min(max_step_psd(&x, &dxa)?.min(max_step_diag(&xd, &dxad)));
        let ad = 1f64.min(max_step_psd(&z, &dza)?.min(max_step_diag(&zd, &dzad)));
        let xa = &x + &dxa * ap;
        let za = &z + &dza * ad;
        let xza = xa.dot(&za)
            + (0..nd)
                .map(|i| (xd[i] + ap * dxad[i]) * (zd[i] + ad * dzad[i]))
                .sum::<f64>();
        let sigma = (xza / xz).clamp(0.0, 1.0).powi(3);
        let k = &g * (sigma * mu) - &x - &dxa * &dza * &g;
        let kd: Vec<f64> = (0..nd)
            .map(|i| sigma * mu * gd[i] - xd[i] - dxad[i] * dzad[i] * gd[i])
            .collect();
        let (dx, dxd, dy, dz, dzd) = direction(&k, &kd)?;
        let ap =
            1f64.min(opts.step_fraction * max_step_psd(&x, &dx)?.min(max_step_diag(&xd, &dxd)));
        let ad =
            1f64.min(opts.step_fraction * max_step_psd(&z, &dz)?.min(max_step_diag(&zd, &dzd)));
        let (x_new, ap) = backtrack(&x, &dx, ap, project)?;
        let (z_new, ad) = backtrack(&z, &dz, ad, project)?;
        x = x_new;
        z = z_new;
        for i in 0..nd {
            xd[i] += ap * dxd[i];
            zd[i] += ad * dzd[i];
        }
        y += &dy * ad;
    }
    Err(Error::MaxIterations(opts.max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_diag_problem(c: &DMatrix<f64>) -> RealProblem {
        let n = c.nrows();
        let constraints = (0..n)
            .map(|i| {
                let mut r = RealConstraint {
                    rhs: 1.0,
                    ..Default::default()
                };
                r.push_sym(i, i, 1.0);
                r
            })
            .collect();
        RealProblem {
            n,
            n_diag: 0,
            c: c.as_slice().to_vec(),
            c_diag: vec![],
            constraints,
        }
    }

    #[test]
    fn trace_objective() {
        let p = unit_diag_problem(&DMatrix::identity(3, 3));
        let s = solve_real(&p, &SolverOptions::default(), &|m| m.clone()).unwrap();
        assert!((s.primal_value - 3.0).abs() < 1e-7);
    }

    #[test]
    fn off_diagonal_objective() {
        let c = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let s = solve_real(&unit_diag_problem(&c), &SolverOptions::default(), &|m| {
            m.clone()
        })
        .unwrap();
        assert!((s.primal_value - 2.0).abs() < 1e-7 && (s.dual_value - 2.0).abs() < 1e-7);
    }

    #[test]
    fn diagonal_block_slack() {
        // max x₁₁ s.t. x₁₁ + s = 1/2, s ≥ 0.
        let mut con = RealConstraint {
            rhs: 0.5,
            diag: vec![(0, 1.0)],
            ..Default::default()
        };
        con.push_sym(0, 0, 1.0);
        let p = RealProblem {
            n: 1,
            n_diag: 1,
            c: vec![1.0],
            c_diag: vec![0.0],
            constraints: vec![con],
        };
        let s = solve_real(&p, &SolverOptions::default(), &|m| m.clone()).unwrap();
        assert!((s.primal_value - 0.5).abs() < 1e-7);
    }
}
