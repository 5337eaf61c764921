//! Dense quaternion vectors and matrices.
//!
//! Vectors follow the right-module convention: scalars act from the right and
//! `⟨x, y⟩ = Σ x̄ᵢ yᵢ` is right-linear in `y`. Spectral questions about
//! self-adjoint matrices are answered through the complex embedding
//! `Ĉ(M) = [[Z, W], [−W̄, Z̄]]` for `M = Z + W·j`.

use std::ops::{Index, IndexMut};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quat::{Complex, Quaternion};

/// Minimum eigenvalue accepted by [`SelfAdjointQuatMatrix::is_psd`].
pub const PSD_TOL: f64 = -1e-9;
/// Cholesky pivots at or below this value count as zero.
pub const PIVOT_TOL: f64 = 1e-12;
/// Gram–Schmidt residual norm below which a vector is dropped as dependent.
pub const GS_DROP_TOL: f64 = 1e-10;
/// Maximum gap between the two members of an eigenvalue pair of `Ĉ(A)`.
pub const PAIRING_TOL: f64 = 1e-8;
/// Maximum deviation `‖M − M*‖_max` accepted as self-adjoint.
pub const SELF_ADJOINT_TOL: f64 = 1e-10;

/// Column vector in `ℍⁿ`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuatVector(pub Vec<Quaternion>);

impl QuatVector {
    pub fn zeros(n: usize) -> Self {
        QuatVector(vec![Quaternion::ZERO; n])
    }

    /// `i`-th standard basis vector.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Quaternion::ONE;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quaternion> {
        self.0.iter()
    }

    /// `⟨self, y⟩ = Σ conj(selfᵢ) yᵢ`.
    pub fn inner(&self, y: &QuatVector) -> Result<Quaternion> {
        check_len(self.len(), y.len())?;
        Ok(self.0.iter().zip(&y.0).map(|(a, b)| a.conj() * *b).sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Entrywise conjugate `x̄`.
    pub fn conj(&self) -> Self {
        QuatVector(self.0.iter().map(|a| a.conj()).collect())
    }

    /// Right scalar multiple `x·q`.
    pub fn mul_right(&self, q: Quaternion) -> Self {
        QuatVector(self.0.iter().map(|a| *a * q).collect())
    }

    pub fn scale(&self, t: f64) -> Self {
        QuatVector(self.0.iter().map(|a| a.scale(t)).collect())
    }

    pub fn add(&self, y: &QuatVector) -> Result<Self> {
        check_len(self.len(), y.len())?;
        Ok(QuatVector(
            self.0.iter().zip(&y.0).map(|(a, b)| *a + *b).collect(),
        ))
    }

    pub fn sub(&self, y: &QuatVector) -> Result<Self> {
        check_len(self.len(), y.len())?;
        Ok(QuatVector(
            self.0.iter().zip(&y.0).map(|(a, b)| *a - *b).collect(),
        ))
    }

    /// The `n × 1` matrix holding this vector.
    pub fn to_column(&self) -> QuatMatrix {
        QuatMatrix::from_vec(self.len(), 1, self.0.clone()).expect("length matches")
    }

    /// `x ⊗ y`, identified with the `m × n` matrix `x yᵀ`.
    pub fn tensor(&self, y: &QuatVector) -> QuatMatrix {
        let mut out = QuatMatrix::zeros(self.len(), y.len());
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in y.0.iter().enumerate() {
                out[(i, j)] = *a * *b;
            }
        }
        out
    }
}

impl From<Vec<Quaternion>> for QuatVector {
    fn from(v: Vec<Quaternion>) -> Self {
        QuatVector(v)
    }
}

/// `⟨x, y⟩ = Σ x̄ᵢ yᵢ`.
pub fn inner_product(x: &QuatVector, y: &QuatVector) -> Result<Quaternion> {
    x.inner(y)
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!("lengths {a} and {b}")));
    }
    Ok(())
}

/// Dense row-major `m × n` quaternion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QuatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(QuatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(m, n, rows.into_iter().flatten().collect())
    }

    /// Real matrix given row by row.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Quaternion::real(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QuatMatrix { rows, cols, data }
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = Quaternion::real(x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn row(&self, i: usize) -> QuatVector {
        QuatVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> QuatVector {
        QuatVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> Self {
        QuatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        QuatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise conjugate `M̄`.
    pub fn conj(&self) -> Self {
        self.map(|q| q.conj())
    }

    pub fn scale(&self, t: f64) -> Self {
        self.map(|q| q.scale(t))
    }

    pub fn matmul(&self, other: &QuatMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QuatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &QuatVector) -> Result<QuatVector> {
        check_len(self.cols, x.len())?;
        Ok(QuatVector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self[(i, j)] * x.0[j]).sum())
                .collect(),
        ))
    }

    pub fn add(&self, other: &QuatMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QuatMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &QuatMatrix,
        f: impl Fn(Quaternion, Quaternion) -> Quaternion,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// `⟨A, B⟩ = Σ conj(Aᵢⱼ) Bᵢⱼ`.
    pub fn inner(&self, other: &QuatMatrix) -> Result<Quaternion> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * *b)
            .sum())
    }

    /// `Ĉ(M) = [[Z, W], [−W̄, Z̄]]` for `M = Z + W·j`.
    pub fn embed_hat_c(&self) -> DMatrix<Complex> {
        let (m, n) = self.shape();
        let mut out = DMatrix::from_element(2 * m, 2 * n, Complex::new(0.0, 0.0));
        for i in 0..m {
            for j in 0..n {
                let (z, w) = self[(i, j)].complex_pair();
                out[(i, j)] = z;
                out[(i, n + j)] = w;
                out[(m + i, j)] = -w.conj();
                out[(m + i, n + j)] = z.conj();
            }
        }
        out
    }

    /// Reads `M` back from the upper blocks of a `2m × 2n` complex matrix with
    /// the structure of `Ĉ(M)`.
    pub fn from_hat_c(c: &DMatrix<Complex>) -> Result<Self> {
        if !c.nrows().is_multiple_of(2) || !c.ncols().is_multiple_of(2) {
            return Err(Error::DimensionMismatch("odd embedding size".into()));
        }
        let (m, n) = (c.nrows() / 2, c.ncols() / 2);
        Ok(QuatMatrix::from_fn(m, n, |i, j| {
            Quaternion::from_complex_pair(c[(i, j)], c[(i, n + j)])
        }))
    }

    /// The `m × n` block matrix of real 4×4 representations.
    pub fn embed_r4(&self) -> DMatrix<f64> {
        let (m, n) = self.shape();
        let mut out = DMatrix::zeros(4 * m, 4 * n);
        for i in 0..m {
            for j in 0..n {
                let b = self[(i, j)].embed_r4();
                out.view_mut((4 * i, 4 * j), (4, 4)).copy_from(&b);
            }
        }
        out
    }

    /// `max_{i,j} |Mᵢⱼ − conj(Mⱼᵢ)|`.
    pub fn self_adjoint_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Row rank by quaternion row echelon reduction with partial pivoting.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let scale = self.max_abs().max(1.0);
        let tol = 1e-10 * scale;
        let (m, n) = self.shape();
        let mut rank = 0;
        for c in 0..n {
            if rank == m {
                break;
            }
            let (p, best) = (rank..m)
                .map(|r| (r, a[(r, c)].norm()))
                .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= tol {
                continue;
            }
            a.swap_rows(p, rank);
            let inv = a[(rank, c)].inv().expect("pivot is nonzero");
            for r in rank + 1..m {
                let f = a[(r, c)] * inv;
                if f == Quaternion::ZERO {
                    continue;
                }
                for k in c..n {
                    let v = f * a[(rank, k)];
                    a[(r, k)] -= v;
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }
}

impl Index<(usize, usize)> for QuatMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QuatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    m: usize,
    n: usize,
    entries: Vec<Vec<Quaternion>>,
}

impl Serialize for QuatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            m: self.rows,
            n: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).0).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MatrixJson::deserialize(d)?;
        if j.entries.len() != j.m || j.entries.iter().any(|r| r.len() != j.n) {
            return Err(D::Error::custom(format!(
                "entries do not form a {}×{} grid",
                j.m, j.n
            )));
        }
        QuatMatrix::from_rows(j.entries).map_err(D::Error::custom)
    }
}

/// Hadamard product `(A ∘ B)ᵢⱼ = Aᵢⱼ Bᵢⱼ`.
pub fn hadamard(a: &QuatMatrix, b: &QuatMatrix) -> Result<QuatMatrix> {
    a.zip_with(b, |x, y| x * y)
}

/// Kronecker product with blocks `Aᵢⱼ B`.
pub fn kron(a: &QuatMatrix, b: &QuatMatrix) -> QuatMatrix {
    let (p, q) = b.shape();
    QuatMatrix::from_fn(a.rows * p, a.cols * q, |r, c| {
        a[(r / p, c / q)] * b[(r % p, c % q)]
    })
}

/// Orthonormalizes `vectors` in order, dropping vectors whose residual norm
/// falls below [`GS_DROP_TOL`].
pub fn gram_schmidt(vectors: &[QuatVector]) -> Result<Vec<QuatVector>> {
    if vectors.is_empty() || vectors.iter().all(|v| v.norm() == 0.0) {
        return Err(Error::AllZero);
    }
    let n = vectors[0].len();
    let mut out: Vec<QuatVector> = Vec::new();
    for v in vectors {
        check_len(n, v.len())?;
        let mut r = v.clone();
        // Two passes keep the basis orthonormal to working precision.
        for _ in 0..2 {
            for u in &out {
                let c = u.inner(&r)?;
                r = r.sub(&u.mul_right(c))?;
            }
        }
        let nr = r.norm();
        if nr > GS_DROP_TOL {
            out.push(r.scale(1.0 / nr));
        }
    }
    Ok(out)
}

/// Number of singular values of `Ĉ(M)` above `1e-8·max(1, σ_max)`.
pub fn hat_c_numerical_rank(m: &QuatMatrix) -> usize {
    let c = m.embed_hat_c();
    let sv = c.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    sv.iter().filter(|&&s| s > 1e-8 * smax).count()
}

/// Square quaternion matrix with `M* = M`, symmetrized on construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SelfAdjointQuatMatrix(QuatMatrix);

impl SelfAdjointQuatMatrix {
    /// Accepts `m` when `‖M − M*‖_max ≤ 1e-10·max(1, ‖M‖_max)` and stores `(M + M*)/2`.
    pub fn new(m: QuatMatrix) -> Result<Self> {
        let dev = m.self_adjoint_deviation();
        if dev > SELF_ADJOINT_TOL * m.max_abs().max(1.0) {
            return Err(Error::NotSelfAdjoint(dev));
        }
        let sym = m.add(&m.adjoint())?.scale(0.5);
        Ok(SelfAdjointQuatMatrix(sym))
    }

    pub fn identity(n: usize) -> Self {
        SelfAdjointQuatMatrix(QuatMatrix::identity(n))
    }

    pub fn matrix(&self) -> &QuatMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> QuatMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    /// Hermitian part of `Ĉ(A)`.
    fn hermitian_embedding(&self) -> DMatrix<Complex> {
        let c = self.0.embed_hat_c();
        (&c + c.adjoint()) * Complex::new(0.5, 0.0)
    }

    /// Sorted eigenvalues of the `2n × 2n` complex embedding.
    pub fn embedding_eigenvalues(&self) -> Vec<f64> {
        let (values, _) = hermitian_eigen(&self.hermitian_embedding());
        // Each eigenvalue of the Hermitian matrix appears twice in its real form.
        values.into_iter().step_by(2).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.embedding_eigenvalues().first().cloned().unwrap_or(0.0)
    }

    /// PSD iff the minimum eigenvalue of `Ĉ(A)` is at least `-1e-9`.
    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue() >= PSD_TOL
    }

    /// `A = U D U*` with real `D` (ascending) and `U*U = I`.
    pub fn eig(&self) -> Result<(Vec<f64>, QuatMatrix)> {
        let n = self.dim();
        let (ev, vecs) = hermitian_eigen(&self.hermitian_embedding());
        let scale = self.0.max_abs().max(1.0);
        // Every quaternion eigenvalue appears four times in the real form.
        for p in 0..n {
            let (a, b) = (ev[4 * p], ev[4 * p + 3]);
            if (a - b).abs() > PAIRING_TOL * scale {
                return Err(Error::EigenPairing((a - b).abs()));
            }
        }
        let mut basis: Vec<QuatVector> = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        for f in &vecs {
            if basis.len() == n {
                break;
            }
            let mut x = QuatVector(
                (0..n)
                    .map(|i| Quaternion::from_complex_pair(f[i], -f[n + i].conj()))
                    .collect(),
            );
            for _ in 0..2 {
                for u in &basis {
                    let c = u.inner(&x)?;
                    x = x.sub(&u.mul_right(c))?;
                }
            }
            let nx = x.norm();
            if nx < 0.5 {
                continue;
            }
            let x = x.scale(1.0 / nx);
            let ax = self.0.mul_vec(&x)?;
            values.push(x.inner(&ax)?.re());
            basis.push(x);
        }
        if basis.len() != n {
            return Err(Error::Numerical("eigenvector collapse lost rank".into()));
        }
        let u = QuatMatrix::from_fn(n, n, |i, j| basis[j].0[i]);
        Ok((values, u))
    }

    /// `A^{1/2}` with negative eigenvalues above the PSD tolerance clipped to 0.
    pub fn sqrt_psd(&self) -> Result<Self> {
        if !self.is_psd() {
            return Err(Error::NotPsd(self.min_eigenvalue()));
        }
        let (d, u) = self.eig()?;
        let s: Vec<f64> = d.iter().map(|&x| x.max(0.0).sqrt()).collect();
        let r = u.matmul(&QuatMatrix::diagonal(&s))?.matmul(&u.adjoint())?;
        SelfAdjointQuatMatrix::new(r)
    }

    /// Vectors `x₁..xₙ` with `⟨xᵢ, xⱼ⟩ = Aᵢⱼ`, from a quaternion Cholesky
    /// factorization `A = R*R` (the `xᵢ` are the columns of `R`).
    pub fn gram_vectors(&self) -> Result<Vec<QuatVector>> {
        if !self.is_psd() {
            return Err(Error::NotPsd(self.min_eigenvalue()));
        }
        let n = self.dim();
        let a = &self.0;
        let mut r = QuatMatrix::zeros(n, n);
        for k in 0..n {
            let mut pivot = a[(k, k)].re();
            for l in 0..k {
                pivot -= r[(l, k)].norm_sqr();
            }
            if pivot <= PIVOT_TOL {
                continue;
            }
            let rkk = pivot.sqrt();
            r[(k, k)] = Quaternion::real(rkk);
            for j in k + 1..n {
                let mut s = a[(k, j)];
                for l in 0..k {
                    s -= r[(l, k)].conj() * r[(l, j)];
                }
                r[(k, j)] = s / rkk;
            }
        }
        Ok((0..n).map(|j| r.column(j)).collect())
    }

    /// Number of nonzero Cholesky pivots.
    pub fn cholesky_rank(&self) -> Result<usize> {
        let g = self.gram_vectors()?;
        let n = self.dim();
        let r = QuatMatrix::from_fn(n, n, |i, j| g[j].0[i]);
        Ok((0..n).filter(|&k| r[(k, k)].re() > 0.0).count())
    }

    /// Checks PSD with unit diagonal to `tol`.
    pub fn check_correlation(&self, tol: f64) -> Result<()> {
        for i in 0..self.dim() {
            let d = self.0[(i, i)].re();
            if (d - 1.0).abs() > tol {
                return Err(Error::NotCorrelation(format!("diagonal entry {i} is {d}")));
            }
        }
        if !self.is_psd() {
            return Err(Error::NotCorrelation(format!(
                "minimum eigenvalue {}",
                self.min_eigenvalue()
            )));
        }
        Ok(())
    }
}

impl std::ops::Deref for SelfAdjointQuatMatrix {
    type Target = QuatMatrix;
    fn deref(&self) -> &QuatMatrix {
        &self.0
    }
}

impl<'de> Deserialize<'de> for SelfAdjointQuatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        SelfAdjointQuatMatrix::new(QuatMatrix::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// Eigendecomposition of a self-adjoint quaternion matrix.
pub fn eig_self_adjoint(a: &SelfAdjointQuatMatrix) -> Result<(Vec<f64>, QuatMatrix)> {
    a.eig()
}

/// `(Aₘ)ᵢⱼ = (A₀)ᵢⱼ |(A₀)ᵢⱼ|^{2m}`, i.e. `A₀ ∘ L^{∘m}` with `Lᵢⱼ = |(A₀)ᵢⱼ|²`.
pub fn correlation_power(a0: &SelfAdjointQuatMatrix, m: u32) -> Result<SelfAdjointQuatMatrix> {
    a0.check_correlation(1e-8)?;
    let out = a0.matrix().map(|q| q.scale(q.norm_sqr().powi(m as i32)));
    SelfAdjointQuatMatrix::new(out)
}

/// Off-diagonal Frobenius norm, relative to the full norm, at which the
/// Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-15;
/// Cap on Jacobi sweeps; quadratic convergence needs far fewer.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigendecomposition `A = V diag(λ) Vᵀ` of a real symmetric matrix by cyclic
/// Jacobi rotations, eigenvalues ascending. Stays accurate for repeated
/// eigenvalues, which the quaternion embeddings always have.
pub fn sym_eigen(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut m = (a + a.transpose()) * 0.5;
    let mut v = DMatrix::<f64>::identity(n, n);
    let total = m.norm();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].powi(2))
            .sum();
        if off.sqrt() <= JACOBI_TOL * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .partial_cmp(&m[(j, j)])
            .expect("finite eigenvalues")
    });
    let values = DVector::from_fn(n, |i, _| m[(order[i], order[i])]);
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (values, vectors)
}

/// Smallest eigenvalue of a real symmetric matrix.
pub fn sym_min_eigenvalue(a: &DMatrix<f64>) -> f64 {
    sym_eigen(a).0.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Eigenpairs of a Hermitian matrix `H = P + iQ`, ascending, through the
/// real symmetric form `[[P, −Q], [Q, P]]`. Each eigenvalue of `H` appears
/// twice; a real eigenvector `(p; q)` gives the eigenvector `p + iq` of `H`.
pub fn hermitian_eigen(h: &DMatrix<Complex>) -> (Vec<f64>, Vec<DVector<Complex>>) {
    let n = h.nrows();
    let r = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let (values, vecs) = sym_eigen(&r);
    let vectors = (0..2 * n)
        .map(|k| {
            let v = vecs.column(k);
            DVector::from_fn(n, |i, _| Complex::new(v[i], v[n + i]))
        })
        .collect();
    (values.iter().cloned().collect(), vectors)
}

/// Real symmetric matrix embedded as a quaternion matrix.
pub fn real_to_quat(a: &DMatrix<f64>) -> QuatMatrix {
    QuatMatrix::from_fn(a.nrows(), a.ncols(), |i, j| Quaternion::real(a[(i, j)]))
}

/// Real part of each entry.
pub fn real_part(a: &QuatMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)].re())
}

/// Complex column vector `(a; −b̄)` representing `x = a + b·j`.
pub fn vector_to_complex(x: &QuatVector) -> DVector<Complex> {
    let n = x.len();
    DVector::from_fn(2 * n, |r, _| {
        if r < n {
            x.0[r].complex_pair().0
        } else {
            -x.0[r - n].complex_pair().1.conj()
        }
    })
}
