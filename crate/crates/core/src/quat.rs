//! Quaternion scalars, the sign function and the 2×2 complex / 4×4 real
//! matrix representations of a single quaternion.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Complex scalar used for the `z + w·j` split and the complex embeddings.
pub type Complex = Complex64;

/// Tolerance for algebraic identities on quaternion scalars.
pub const IDENTITY_TOL: f64 = 1e-12;

/// `a0 + a1·i + a2·j + a3·k`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

/// Value of `sign(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `sign(0) = 0`.
    ZeroMapsToZero,
    /// `sign(0) = 1`, so the result is always a unit quaternion.
    ZeroMapsToOne,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Quaternion { a0, a1, a2, a3 }
    }

    pub const fn real(x: f64) -> Self {
        Quaternion::new(x, 0.0, 0.0, 0.0)
    }

    /// `z + w·j` with `z = x + y·i`, `w = u + v·i`.
    pub fn from_complex_pair(z: Complex, w: Complex) -> Self {
        Quaternion::new(z.re, z.im, w.re, w.im)
    }

    /// The pair `(z, w)` with `self = z + w·j`.
    pub fn complex_pair(self) -> (Complex, Complex) {
        (
            Complex::new(self.a0, self.a1),
            Complex::new(self.a2, self.a3),
        )
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    /// Real part `Re a`.
    pub fn re(self) -> f64 {
        self.a0
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// `|a|²`.
    pub fn norm_sqr(self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// `|a|`.
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Two-sided inverse `ā/|a|²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// `(ā, |a|, a⁻¹)`.
    pub fn conj_norm_inv(self) -> Result<(Self, f64, Self)> {
        Ok((self.conj(), self.norm(), self.inv()?))
    }

    pub fn scale(self, t: f64) -> Self {
        Quaternion::new(self.a0 * t, self.a1 * t, self.a2 * t, self.a3 * t)
    }

    /// `a/|a|`, with `sign(0)` chosen by `convention`.
    pub fn sign(self, convention: SignConvention) -> Self {
        let n = self.norm();
        if n == 0.0 {
            match convention {
                SignConvention::ZeroMapsToZero => Quaternion::ZERO,
                SignConvention::ZeroMapsToOne => Quaternion::ONE,
            }
        } else {
            self.scale(1.0 / n)
        }
    }

    /// Euclidean dot product of the coefficient vectors, equal to `Re(ā b)`.
    pub fn dot(self, b: Self) -> f64 {
        self.a0 * b.a0 + self.a1 * b.a1 + self.a2 * b.a2 + self.a3 * b.a3
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    /// `C(a) = [[z, w], [−w̄, z̄]]`.
    pub fn embed_c2(self) -> Matrix2<Complex> {
        let (z, w) = self.complex_pair();
        Matrix2::new(z, w, -w.conj(), z.conj())
    }

    /// The real 4×4 representation obtained from `C(a)` by writing each
    /// complex entry as a real 2×2 block.
    pub fn embed_r4(self) -> Matrix4<f64> {
        let (x, y, u, v) = (self.a0, self.a1, self.a2, self.a3);
        Matrix4::new(
            x, y, u, v, //
            -y, x, -v, u, //
            -u, v, x, -y, //
            -v, -u, y, x,
        )
    }

    /// Inverse of [`Quaternion::embed_c2`] on matrices of the form `[[z, w], [−w̄, z̄]]`.
    pub fn from_c2(m: &Matrix2<Complex>) -> Self {
        Quaternion::from_complex_pair(m[(0, 0)], m[(0, 1)])
    }

    pub fn approx_eq(self, b: Self, tol: f64) -> bool {
        (self - b).norm() <= tol
    }
}

/// Sign function with an explicit convention for zero.
pub fn sign_quat(a: Quaternion, convention: SignConvention) -> Quaternion {
    a.sign(convention)
}

/// Hamilton product.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
            a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
            a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
            a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, t: f64) -> Quaternion {
        self.scale(t)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, b: Quaternion) {
        *self = *self * b;
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, t: f64) -> Quaternion {
        self.scale(1.0 / t)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, b: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a0 + b.a0,
            self.a1 + b.a1,
            self.a2 + b.a2,
            self.a3 + b.a3,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, b: Quaternion) {
        *self = *self + b;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, b: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a0 - b.a0,
            self.a1 - b.a1,
            self.a2 - b.a2,
            self.a3 - b.a3,
        )
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, b: Quaternion) {
        *self = *self - b;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Quaternion::real(x)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.a0, self.a1, self.a2, self.a3)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        Ok(Quaternion::from_array(a))
    }
}
