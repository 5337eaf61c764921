//! Exact truncations of the rescaled continuation functions `φ₁`, `φ₂` and
//! their first two derivatives, with one-sided tail bounds.
//!
//! Every truncation is even or odd in `x` and is stored as a rational
//! function of `u = x⁻²` whose denominator is `u^a (1 − u)^b`, positive for
//! `x > 1`. Odd members carry an extra factor `x⁻³`.
//!
//! With `a_k = (2k−5)!!(2k−1)!! / (2^{2k−2} (k!)²)` and
//! `b_k = (2k−1)!!(2k+3)!! / (4^k k! (k+2)!)`:
//!
//! * `φ₁ = ¾ (4/3 − u + Σ_{k≥2} a_k u^k)`
//! * `φ₁′ = (3/2) x⁻³ (1 − Σ_{k≥2} k a_k u^{k−1})`
//! * `φ₁″ = (3/2) (−3u² + Σ_{k≥2} k(2k+1) a_k u^{k+1})`
//! * `φ₂ = Σ_{k≥0} b_k (1−u)^{k+2}`
//! * `φ₂′ = 2x⁻³ Σ_{k≥0} (k+2) b_k (1−u)^{k+1}`
//! * `φ₂″ = 2 Σ_{k≥0} (k+2) b_k (1−u)^k ((2k+5)u³ − 3u²)`
//!
//! All coefficient sequences above are positive and decreasing in `k`, so a
//! tail starting at `k = m` is bounded by its first coefficient times a
//! geometric series in `u` (or `1 − u`).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{int, Poly};
use super::ratfn::RationalFunction;
use crate::error::{Error, Result};

/// The eleven truncations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// `φ_{1,m}`: lower bound for `φ₁`.
    Phi1,
    /// `φ̂_{1,m}`: upper bound for `φ₁`.
    Phi1Hat,
    /// `φ′_{1,m}`: upper bound for `φ₁′`.
    Phi1Prime,
    /// `φ̄_{1,m}`: lower bound for `φ₁′`.
    Phi1Bar,
    /// `φ″_{1,m}`: lower bound for `φ₁″`.
    Phi1Second,
    /// `φ̃_{1,m}`: upper bound for `φ₁″`.
    Phi1Tilde,
    /// `φ_{2,m}`: lower bound for `φ₂`.
    Phi2,
    /// `φ̂_{2,m}`: upper bound for `φ₂`.
    Phi2Hat,
    /// `φ′_{2,m}`: lower bound for `φ₂′`.
    Phi2Prime,
    /// `φ̄_{2,m}`: upper bound for `φ₂′`.
    Phi2Bar,
    /// `φ″_{2,m}`: lower bound for `φ₂″` on `(1, 5]` once `m ≥ 35`.
    Phi2Second,
}

impl Truncation {
    pub const ALL: [Truncation; 11] = [
        Truncation::Phi1,
        Truncation::Phi1Hat,
        Truncation::Phi1Prime,
        Truncation::Phi1Bar,
        Truncation::Phi1Second,
        Truncation::Phi1Tilde,
        Truncation::Phi2,
        Truncation::Phi2Hat,
        Truncation::Phi2Prime,
        Truncation::Phi2Bar,
        Truncation::Phi2Second,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Truncation::Phi1 => "phi1_m",
            Truncation::Phi1Hat => "phi1hat_m",
            Truncation::Phi1Prime => "phi1prime_m",
            Truncation::Phi1Bar => "phi1bar_m",
            Truncation::Phi1Second => "phi1second_m",
            Truncation::Phi1Tilde => "phi1tilde_m",
            Truncation::Phi2 => "phi2_m",
            Truncation::Phi2Hat => "phi2hat_m",
            Truncation::Phi2Prime => "phi2prime_m",
            Truncation::Phi2Bar => "phi2bar_m",
            Truncation::Phi2Second => "phi2second_m",
        }
    }

    /// Which function is bounded: 1 or 2, and the derivative order.
    pub fn target(self) -> (u8, u8) {
        use Truncation::*;
        match self {
            Phi1 | Phi1Hat => (1, 0),
            Phi1Prime | Phi1Bar => (1, 1),
            Phi1Second | Phi1Tilde => (1, 2),
            Phi2 | Phi2Hat => (2, 0),
            Phi2Prime | Phi2Bar => (2, 1),
            Phi2Second => (2, 2),
        }
    }

    /// `true` for upper bounds, `false` for lower bounds.
    pub fn is_upper(self) -> bool {
        use Truncation::*;
        matches!(self, Phi1Hat | Phi1Prime | Phi1Tilde | Phi2Hat | Phi2Bar)
    }
}

/// `n!!` for odd `n ≥ −1` (`(−1)!! = 1`).
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `a_k = (2k−5)!!(2k−1)!! / (2^{2k−2} (k!)²)`, `k ≥ 2`.
pub fn coeff_a(k: u64) -> BigRational {
    let num = double_factorial(2 * k as i64 - 5) * double_factorial(2 * k as i64 - 1);
    let f = factorial(k);
    BigRational::new(num, (BigInt::one() << (2 * k - 2)) * &f * &f)
}

/// `b_k = (2k−1)!!(2k+3)!! / (4^k k! (k+2)!)`, `k ≥ 0`.
pub fn coeff_b(k: u64) -> BigRational {
    let num = double_factorial(2 * k as i64 - 1) * double_factorial(2 * k as i64 + 3);
    BigRational::new(
        num,
        (BigInt::one() << (2 * k)) * factorial(k) * factorial(k + 2),
    )
}

/// Orders up to which [`eval_truncation_f64`] reads cached coefficients.
const F64_CACHE: usize = 256;

/// `f64` values of `a_k` and `b_k` for `k < F64_CACHE` (`a_0 = a_1 = 0`).
fn coeffs_f64() -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CACHE.get_or_init(|| {
        let a = (0..F64_CACHE as u64)
            .map(|k| {
                if k < 2 {
                    0.0
                } else {
                    coeff_a(k).to_f64().unwrap_or(0.0)
                }
            })
            .collect();
        let b = (0..F64_CACHE as u64)
            .map(|k| coeff_b(k).to_f64().unwrap_or(0.0))
            .collect();
        (a, b)
    })
}

/// `x^{−3·odd} · num(u) / (u^{u_pow} (1 − u)^{w_pow})` with `u = x⁻²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UExpr {
    pub odd: bool,
    pub num: Poly,
    pub u_pow: u32,
    pub w_pow: u32,
}

/// `1 − u`.
fn one_minus_u() -> Poly {
    Poly::from_i64(&[1, -1])
}

impl UExpr {
    pub fn even(num: Poly) -> Self {
        UExpr {
            odd: false,
            num,
            u_pow: 0,
            w_pow: 0,
        }
    }

    pub fn odd(num: Poly) -> Self {
        UExpr {
            odd: true,
            num,
            u_pow: 0,
            w_pow: 0,
        }
    }

    pub fn constant(c: BigRational) -> Self {
        UExpr::even(Poly::constant(c))
    }

    /// `c · u^k`, times `x⁻³` when `odd`.
    pub fn monomial(odd: bool, c: BigRational, k: usize) -> Self {
        UExpr {
            odd,
            num: Poly::monomial(c, k),
            u_pow: 0,
            w_pow: 0,
        }
    }

    fn with_den(mut self, u_pow: u32, w_pow: u32) -> Self {
        self.u_pow = u_pow;
        self.w_pow = w_pow;
        self
    }

    /// Numerator brought to denominator `u^U (1−u)^W` with `U ≥ u_pow`, `W ≥ w_pow`.
    fn lift(&self, u: u32, w: u32) -> Poly {
        let mut n = self.num.shift((u - self.u_pow) as usize);
        if w > self.w_pow {
            n = &n * &one_minus_u().pow(w - self.w_pow);
        }
        n
    }

    pub fn add(&self, o: &UExpr) -> Result<UExpr> {
        if self.odd != o.odd {
            return Err(Error::InvalidInput(
                "sum of an even and an odd expression".into(),
            ));
        }
        let (u, w) = (self.u_pow.max(o.u_pow), self.w_pow.max(o.w_pow));
        Ok(UExpr {
            odd: self.odd,
            num: &self.lift(u, w) + &o.lift(u, w),
            u_pow: u,
            w_pow: w,
        }
        .normalized())
    }

    pub fn sub(&self, o: &UExpr) -> Result<UExpr> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> UExpr {
        UExpr {
            num: -&self.num,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &BigRational) -> UExpr {
        UExpr {
            num: self.num.scale(c),
            ..self.clone()
        }
        .normalized()
    }

    /// Product; `x⁻³ · x⁻³ = u³`.
    pub fn mul(&self, o: &UExpr) -> UExpr {
        let mut num = &self.num * &o.num;
        let odd = self.odd ^ o.odd;
        if self.odd && o.odd {
            num = num.shift(3);
        }
        UExpr {
            odd,
            num,
            u_pow: self.u_pow + o.u_pow,
            w_pow: self.w_pow + o.w_pow,
        }
        .normalized()
    }

    pub fn square(&self) -> UExpr {
        self.mul(self)
    }

    /// Cancels common factors `u` and `1 − u`.
    pub fn normalized(mut self) -> UExpr {
        if self.num.is_zero() {
            self.u_pow = 0;
            self.w_pow = 0;
            return self;
        }
        while self.u_pow > 0 && self.num.coeff(0).is_zero() {
            self.num = Poly::new(self.num.coeffs()[1..].to_vec());
            self.u_pow -= 1;
        }
        let one = BigRational::one();
        while self.w_pow > 0 && self.num.eval(&one).is_zero() {
            self.num = self.num.div_exact(&one_minus_u()).expect("1 − u divides");
            self.w_pow -= 1;
        }
        self
    }

    /// Exact value at rational `x > 1` (or `x = 1` when no pole remains).
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let u = (x * x).recip();
        let one_minus = BigRational::one() - &u;
        if self.w_pow > 0 && one_minus.is_zero() {
            return Err(Error::Domain(format!("pole at x = {x}")));
        }
        let mut v = self.num.eval(&u);
        v /= num_traits::pow(u.clone(), self.u_pow as usize);
        v /= num_traits::pow(one_minus, self.w_pow as usize);
        if self.odd {
            v *= num_traits::pow(u.clone(), 1) * x.recip();
        }
        Ok(v)
    }

    /// Float value at `x`, from the exact value at the nearest `f64` rational.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        let xr = BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("x = {x}")))?;
        Ok(self.eval(&xr)?.to_f64().unwrap_or(f64::NAN))
    }

    /// The same function as a reduced rational function of `x`.
    pub fn to_x_rational(&self) -> Result<RationalFunction> {
        let e = self.normalized_clone();
        let d = e.num.degree().unwrap_or(0);
        // num(x⁻²) = x^{−2d} Σ n_k x^{2(d−k)}.
        let mut coeffs = vec![BigRational::zero(); 2 * d + 1];
        for (k, c) in e.num.coeffs().iter().enumerate() {
            coeffs[2 * (d - k)] = c.clone();
        }
        let rev = Poly::new(coeffs);
        let power = -3 * e.odd as i64 - 2 * d as i64 + 2 * e.u_pow as i64 + 2 * e.w_pow as i64;
        let x2m1 = Poly::from_i64(&[-1, 0, 1]).pow(e.w_pow);
        let (num, den) = if power >= 0 {
            (rev.shift(power as usize), x2m1)
        } else {
            (rev, x2m1.shift((-power) as usize))
        };
        RationalFunction::from_coprime(num, den)
    }

    fn normalized_clone(&self) -> UExpr {
        self.clone().normalized()
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0)
    }
}

/// The truncation `which` of order `m` in `u = x⁻²` form.
pub fn build_phi_u(m: u32, which: Truncation) -> Result<UExpr> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("truncation order m = {m} < 2")));
    }
    let m64 = m as u64;
    let w = one_minus_u();
    Ok(match which {
        Truncation::Phi1 | Truncation::Phi1Hat => {
            let top = if which == Truncation::Phi1 {
                m64
            } else {
                m64 - 1
            };
            let mut c = vec![BigRational::new(4.into(), 3.into()), int(-1)];
            for k in 2..=top {
                c.push(coeff_a(k));
            }
            let body = UExpr::even(Poly::new(c));
            let body = if which == Truncation::Phi1Hat {
                let tail = UExpr::monomial(false, coeff_a(m64), m as usize).with_den(0, 1);
                body.add(&tail)?
            } else {
                body
            };
            body.scale(&BigRational::new(3.into(), 4.into()))
        }
        Truncation::Phi1Prime | Truncation::Phi1Bar => {
            let top = if which == Truncation::Phi1Prime {
                m64
            } else {
                m64 - 1
            };
            let mut c = vec![int(1)];
            for k in 2..=top {
                c.push(-(coeff_a(k) * BigInt::from(k)));
            }
            let body = UExpr::odd(Poly::new(c));
            let body = if which == Truncation::Phi1Bar {
                let tail =
                    UExpr::monomial(true, -(coeff_a(m64) * BigInt::from(m64)), m as usize - 1)
                        .with_den(0, 1);
                body.add(&tail)?
            } else {
                body
            };
            body.scale(&BigRational::new(3.into(), 2.into()))
        }
        Truncation::Phi1Second | Truncation::Phi1Tilde => {
            let top = if which == Truncation::Phi1Second {
                m64
            } else {
                m64 - 1
            };
            let mut c = vec![int(0), int(0), int(-3)];
            for k in 2..=top {
                c.push(coeff_a(k) * BigInt::from(k * (2 * k + 1)));
            }
            let body = UExpr::even(Poly::new(c));
            let body = if which == Truncation::Phi1Tilde {
                let tail = UExpr::monomial(
                    false,
                    coeff_a(m64) * BigInt::from(m64 * (2 * m64 + 1)),
                    m as usize + 1,
                )
                .with_den(0, 1);
                body.add(&tail)?
            } else {
                body
            };
            body.scale(&BigRational::new(3.into(), 2.into()))
        }
        Truncation::Phi2 | Truncation::Phi2Hat => {
            let top = if which == Truncation::Phi2 {
                m64
            } else {
                m64 - 1
            };
            let mut acc = Poly::zero();
            for k in 0..=top {
                acc = &acc + &w.pow(k as u32 + 2).scale(&coeff_b(k));
            }
            let body = UExpr::even(acc);
            if which == Truncation::Phi2Hat {
                let tail = UExpr::even(w.pow(m + 2).scale(&coeff_b(m64))).with_den(1, 0);
                body.add(&tail)?
            } else {
                body
            }
        }
        Truncation::Phi2Prime | Truncation::Phi2Bar => {
            let top = if which == Truncation::Phi2Prime {
                m64
            } else {
                m64 - 1
            };
            let mut acc = Poly::zero();
            for k in 0..=top {
                acc = &acc
                    + &w.pow(k as u32 + 1)
                        .scale(&(coeff_b(k) * BigInt::from(k + 2)));
            }
            let body = UExpr::odd(acc);
            let body = if which == Truncation::Phi2Bar {
                let tail = UExpr::odd(w.pow(m + 1).scale(&(coeff_b(m64) * BigInt::from(m64 + 2))))
                    .with_den(1, 0);
                body.add(&tail)?
            } else {
                body
            };
            body.scale(&int(2))
        }
        Truncation::Phi2Second => {
            let mut acc = Poly::zero();
            for k in 0..=m64 {
                let cubic = Poly::new(vec![int(0), int(0), int(-3), int(2 * k as i64 + 5)]);
                acc =
                    &acc + &(&w.pow(k as u32) * &cubic).scale(&(coeff_b(k) * BigInt::from(k + 2)));
            }
            UExpr::even(acc).scale(&int(2))
        }
    }
    .normalized())
}

/// The truncation `which` of order `m` as a reduced rational function of `x`.
pub fn build_phi(m: u32, which: Truncation) -> Result<RationalFunction> {
    build_phi_u(m, which)?.to_x_rational()
}

/// Float evaluation of a truncation straight from its defining sums.
pub fn eval_truncation_f64(m: u32, which: Truncation, x: f64) -> f64 {
    let u = 1.0 / (x * x);
    let w = 1.0 - u;
    let (ca, cb) = coeffs_f64();
    let a = |k: u64| {
        ca.get(k as usize)
            .copied()
            .unwrap_or_else(|| coeff_a(k).to_f64().unwrap_or(0.0))
    };
    let b = |k: u64| {
        cb.get(k as usize)
            .copied()
            .unwrap_or_else(|| coeff_b(k).to_f64().unwrap_or(0.0))
    };
    let m64 = m as u64;
    use Truncation::*;
    match which {
        Phi1 | Phi1Hat => {
            let top = if which == Phi1 { m64 } else { m64 - 1 };
            let mut s = 4.0 / 3.0 - u + (2..=top).map(|k| a(k) * u.powi(k as i32)).sum::<f64>();
            if which == Phi1Hat {
                s += a(m64) * u.powi(m as i32) / w;
            }
            0.75 * s
        }
        Phi1Prime | Phi1Bar => {
            let top = if which == Phi1Prime { m64 } else { m64 - 1 };
            let mut s = x.powi(-3)
                - (2..=top)
                    .map(|k| k as f64 * a(k) * x.powi(-(2 * k as i32) - 1))
                    .sum::<f64>();
            if which == Phi1Bar {
                s -= m as f64 * a(m64) * x.powi(-(2 * m as i32) + 1) / (x * x - 1.0);
            }
            1.5 * s
        }
        Phi1Second | Phi1Tilde => {
            let top = if which == Phi1Second { m64 } else { m64 - 1 };
            let c = |k: u64| (k * (2 * k + 1)) as f64 * a(k);
            let mut s = -3.0 * x.powi(-4)
                + (2..=top)
                    .map(|k| c(k) * x.powi(-(2 * k as i32) - 2))
                    .sum::<f64>();
            if which == Phi1Tilde {
                s += c(m64) * x.powi(-(2 * m as i32)) / (x * x - 1.0);
            }
            1.5 * s
        }
        Phi2 | Phi2Hat => {
            let top = if which == Phi2 { m64 } else { m64 - 1 };
            let mut s = (0..=top).map(|k| b(k) * w.powi(k as i32 + 2)).sum::<f64>();
            if which == Phi2Hat {
                s += b(m64) * w.powi(m as i32 + 2) * x * x;
            }
            s
        }
        Phi2Prime | Phi2Bar => {
            let top = if which == Phi2Prime { m64 } else { m64 - 1 };
            let e = |k: u64| (k + 2) as f64 * b(k);
            let mut s = (0..=top).map(|k| e(k) * w.powi(k as i32 + 1)).sum::<f64>();
            if which == Phi2Bar {
                s += e(m64) * w.powi(m as i32 + 1) * x * x;
            }
            2.0 * x.powi(-3) * s
        }
        Phi2Second => {
            let e = |k: u64| (k + 2) as f64 * b(k);
            2.0 * x.powi(-6)
                * (0..=m64)
                    .map(|k| e(k) * w.powi(k as i32) * ((2 * k + 5) as f64 - 3.0 * x * x))
                    .sum::<f64>()
        }
    }
}

/// Sign of `b` as −1, 0 or 1.
pub fn sign_of(b: &BigRational) -> i32 {
    if b.is_positive() {
        1
    } else if b.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::*;

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(coeff_a(2), rat(3, 16));
        assert_eq!(coeff_b(0), int(3) / int(2));
    }

    #[test]
    fn phi2_vanishes_at_one() {
        for m in [2, 10, 50] {
            let p = build_phi_u(m, Truncation::Phi2).unwrap();
            assert!(p.eval(&int(1)).unwrap().is_zero());
        }
    }

    #[test]
    fn phi1_tends_to_one() {
        let p = build_phi_u(50, Truncation::Phi1).unwrap();
        let v = p.eval(&int(1_000_000)).unwrap();
        assert!((v - int(1)).abs() < rat(1, 1_000_000_000));
    }

    #[test]
    fn hat_dominates_at_two() {
        let x = int(2);
        let lo = build_phi_u(50, Truncation::Phi1).unwrap().eval(&x).unwrap();
        let hi = build_phi_u(50, Truncation::Phi1Hat)
            .unwrap()
            .eval(&x)
            .unwrap();
        assert!(lo < hi);
    }

    #[test]
    fn derivative_truncations_are_exact_derivatives() {
        for m in [2, 3, 6] {
            let d = |w| build_phi(m, w).unwrap();
            assert!(d(Truncation::Phi1)
                .derivative()
                .unwrap()
                .same_function(&d(Truncation::Phi1Prime)));
            assert!(d(Truncation::Phi1Prime)
                .derivative()
                .unwrap()
                .same_function(&d(Truncation::Phi1Second)));
            assert!(d(Truncation::Phi2)
                .derivative()
                .unwrap()
                .same_function(&d(Truncation::Phi2Prime)));
            assert!(d(Truncation::Phi2Prime)
                .derivative()
                .unwrap()
                .same_function(&d(Truncation::Phi2Second)));
        }
    }

    #[test]
    fn exact_and_float_forms_agree() {
        for which in Truncation::ALL {
            let e = build_phi_u(12, which).unwrap();
            let rf = build_phi(12, which).unwrap();
            for x in [rat(11, 10), rat(3, 2), rat(5, 2), int(5)] {
                let v = e.eval(&x).unwrap();
                assert_eq!(rf.eval(&x).unwrap(), v, "{which:?}");
                let f = eval_truncation_f64(12, which, x.to_f64().unwrap());
                let vf = v.to_f64().unwrap();
                assert!(
                    (f - vf).abs() <= 1e-12 * (1.0 + vf.abs()),
                    "{which:?}: {f} vs {vf}"
                );
            }
        }
    }

    #[test]
    fn reduced_form_is_idempotent() {
        for which in Truncation::ALL {
            let rf = build_phi(8, which).unwrap();
            assert_eq!(rf.reduce().unwrap(), rf, "{which:?}");
        }
    }
}
