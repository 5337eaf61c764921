//! Complex Hermitian SDPs solved through the real embedding
//! `H ↦ [[Re H, −Im H], [Im H, Re H]]`, with `⟨A, H⟩ = Re tr(AH) = ½⟨emb A, emb H⟩`,
//! and the quaternion-structured programs built on them.

pub mod programs;
pub mod real;

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quat::Complex;

pub use programs::{
    big_gamma_sdp, complex_grothendieck_sdp, gamma_sdp, grothendieck_sdp, nesterov_check,
    structure_constraints, GammaSdp, GrothendieckSdp, NesterovReport,
};
pub use real::{RealConstraint, RealProblem, RealSolution, SolverOptions};

/// Hermiticity tolerance for problem data.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Linear functional `H ↦ Re tr(A H)` given by upper-triangular entries
/// `(r, c, A_rc)` with `r ≤ c`; `A_cr = conj(A_rc)` is implied and diagonal
/// values must be real.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SdpConstraint {
    #[serde(with = "complex_entries")]
    pub entries: Vec<(usize, usize, Complex)>,
    pub rhs: f64,
}

impl SdpConstraint {
    pub fn new(rhs: f64) -> Self {
        SdpConstraint {
            entries: vec![],
            rhs,
        }
    }

    /// `Re H_rc` for `r < c`, or `H_rr`.
    pub fn re_entry(mut self, r: usize, c: usize, coeff: f64) -> Self {
        let (r, c) = (r.min(c), r.max(c));
        let v = if r == c { coeff } else { coeff / 2.0 };
        self.entries.push((r, c, Complex::new(v, 0.0)));
        self
    }

    /// `Im H_rc` for `r < c`.
    pub fn im_entry(mut self, r: usize, c: usize, coeff: f64) -> Self {
        assert!(r < c, "imaginary part needs r < c");
        // A_rc = i·t/2, A_cr = −i·t/2 gives Re tr(AH) = t·Im H_rc.
        self.entries.push((r, c, Complex::new(0.0, coeff / 2.0)));
        self
    }

    /// `Re tr(A H)`.
    pub fn apply(&self, h: &DMatrix<Complex>) -> f64 {
        self.entries
            .iter()
            .map(|&(r, c, a)| {
                if r == c {
                    a.re * h[(r, r)].re
                } else {
                    2.0 * (a * h[(c, r)]).re
                }
            })
            .sum()
    }
}

/// `max Re tr(C H)` over Hermitian `H ⪰ 0` with `⟨Aₖ, H⟩ = bₖ` and `⟨A'ₖ, H⟩ ≤ b'ₖ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdpProblem {
    pub dim: usize,
    #[serde(with = "complex_matrix")]
    pub objective: DMatrix<Complex>,
    pub equalities: Vec<SdpConstraint>,
    pub inequalities: Vec<SdpConstraint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdpSolution {
    #[serde(with = "complex_matrix")]
    pub x: DMatrix<Complex>,
    /// `Re tr(C H)` at the returned `H`.
    pub value: f64,
    /// Dual objective `bᵀy`; an upper bound up to the dual infeasibility.
    pub dual_value: f64,
    pub gap: f64,
    pub iterations: usize,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
    /// Smallest eigenvalue of `H`.
    pub min_eigenvalue: f64,
}

/// `[[Re A, −Im A], [Im A, Re A]]`.
pub fn real_embedding(a: &DMatrix<Complex>) -> DMatrix<f64> {
    let (r, c) = a.shape();
    let mut out = DMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = a[(i, j)];
            out[(i, j)] = z.re;
            out[(r + i, c + j)] = z.re;
            out[(r + i, j)] = z.im;
            out[(i, c + j)] = -z.im;
        }
    }
    out
}

/// Inverse of [`real_embedding`] after averaging onto its image.
pub fn from_real_embedding(x: &DMatrix<f64>) -> DMatrix<Complex> {
    let d = x.nrows() / 2;
    DMatrix::from_fn(d, d, |i, j| {
        Complex::new(
            0.5 * (x[(i, j)] + x[(d + i, d + j)]),
            0.5 * (x[(d + i, j)] - x[(i, d + j)]),
        )
    })
}

fn hermitian_deviation(a: &DMatrix<Complex>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Real constraint `½⟨emb A, X⟩` for a Hermitian functional on dimension `d`.
fn embed_constraint(c: &SdpConstraint, d: usize) -> Result<RealConstraint> {
    let mut out = RealConstraint {
        rhs: c.rhs,
        ..Default::default()
    };
    for &(r, col, a) in &c.entries {
        if r >= d || col >= d {
            return Err(Error::DimensionMismatch(format!(
                "entry ({r}, {col}) outside dimension {d}"
            )));
        }
        if r == col {
            if a.im.abs() > HERMITIAN_TOL {
                return Err(Error::NotSelfAdjoint(a.im.abs()));
            }
            out.push_sym(r, r, 0.5 * a.re);
            out.push_sym(d + r, d + r, 0.5 * a.re);
        } else {
            // A_rc = a and A_cr = ā contribute Re(a) at (r,c), (d+r,d+c) and
            // Im(a) at (d+r, c), −Im(a) at (d+c, r), each mirrored.
            out.push_sym(r, col, 0.5 * a.re);
            out.push_sym(d + r, d + col, 0.5 * a.re);
            out.push_sym(d + r, col, 0.5 * a.im);
            out.push_sym(d + col, r, -0.5 * a.im);
        }
    }
    Ok(out)
}

/// Solves a Hermitian SDP to relative tolerance `tol`.
pub fn solve(problem: &SdpProblem, tol: f64) -> Result<SdpSolution> {
    solve_with(
        problem,
        &SolverOptions {
            tol,
            ..Default::default()
        },
    )
}

pub fn solve_with(problem: &SdpProblem, opts: &SolverOptions) -> Result<SdpSolution> {
    let d = problem.dim;
    if problem.objective.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "objective is {:?}, expected {d}×{d}",
            problem.objective.shape()
        )));
    }
    let dev = hermitian_deviation(&problem.objective);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotSelfAdjoint(dev));
    }
    let emb_c = real_embedding(&problem.objective) * 0.5;
    let mut constraints = Vec::with_capacity(problem.equalities.len() + problem.inequalities.len());
    for c in &problem.equalities {
        constraints.push(embed_constraint(c, d)?);
    }
    for (k, c) in problem.inequalities.iter().enumerate() {
        let mut rc = embed_constraint(c, d)?;
        rc.diag.push((k, 1.0));
        constraints.push(rc);
    }
    let nd = problem.inequalities.len();
    let rp = RealProblem {
        n: 2 * d,
        n_diag: nd,
        c: emb_c.as_slice().to_vec(),
        c_diag: vec![0.0; nd],
        constraints,
    };
    let project = |x: &DMatrix<f64>| real_embedding(&from_real_embedding(x));
    let s = real::solve_real(&rp, opts, &project)?;
    let h = from_real_embedding(&s.x);
    let value: f64 = {
        let c = &problem.objective;
        let mut v = 0.0;
        for i in 0..d {
            for j in 0..d {
                v += (c[(i, j)] * h[(j, i)]).re;
            }
        }
        v
    };
    let min_eigenvalue = crate::linalg::sym_min_eigenvalue(&real_embedding(&h));
    Ok(SdpSolution {
        x: h,
        value,
        dual_value: s.dual_value,
        gap: (s.primal_value - s.dual_value).abs(),
        iterations: s.iterations,
        primal_infeasibility: s.primal_infeasibility,
        dual_infeasibility: s.dual_infeasibility,
        min_eigenvalue,
    })
}

mod complex_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(
        m: &DMatrix<Complex>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| [m[(i, j)].re, m[(i, j)].im])
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<DMatrix<Complex>, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(D::Error::custom("ragged complex matrix"));
        }
        Ok(DMatrix::from_fn(r, c, |i, j| {
            Complex::new(rows[i][j][0], rows[i][j][1])
        }))
    }
}

mod complex_entries {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[(usize, usize, Complex)],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let e: Vec<(usize, usize, [f64; 2])> =
            v.iter().map(|&(r, c, z)| (r, c, [z.re, z.im])).collect();
        e.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<(usize, usize, Complex)>, D::Error> {
        let e: Vec<(usize, usize, [f64; 2])> = Vec::deserialize(d)?;
        Ok(e.into_iter()
            .map(|(r, c, z)| (r, c, Complex::new(z[0], z[1])))
            .collect())
    }
}
