//! Odd power series with exact rational parts and a tracked power of
//! `λ = 32/(9π)`, their compositional inverses, and sign reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::qseries::QSeries;
use crate::error::{Error, Result};

/// `32/(9π)`.
pub fn lambda() -> f64 {
    32.0 / (9.0 * std::f64::consts::PI)
}

/// `Σ_k r_k λ^{s(k)} x^{2k+1}` with `s(k) = per_degree·(2k+1) + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactOddSeries {
    /// Rational parts `r_k`.
    pub rational: Vec<BigRational>,
    pub per_degree: i64,
    pub offset: i64,
}

impl ExactOddSeries {
    pub fn new(rational: Vec<BigRational>, per_degree: i64, offset: i64) -> Self {
        ExactOddSeries {
            rational,
            per_degree,
            offset,
        }
    }

    pub fn len(&self) -> usize {
        self.rational.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rational.is_empty()
    }

    /// Exponent of `λ` in the coefficient of `x^{2k+1}`.
    pub fn scale_exponent(&self, k: usize) -> i64 {
        self.per_degree * (2 * k as i64 + 1) + self.offset
    }

    /// Float value of the coefficient of `x^{2k+1}`.
    pub fn coeff_f64(&self, k: usize) -> f64 {
        self.rational[k].to_f64().unwrap_or(f64::NAN) * lambda().powi(self.scale_exponent(k) as i32)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.coeff_f64(k)).collect()
    }

    /// Sign of the coefficient of `x^{2k+1}` (the scale is positive).
    pub fn sign(&self, k: usize) -> i32 {
        let r = &self.rational[k];
        if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Float evaluation by Horner in `x²`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let x2 = x * x;
        self.coeffs_f64()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x2 + c)
            * x
    }
}

/// `C(2k, k)² / 16^k`, the square of `(2k−1)!!/(2k)!!`.
fn central_sq(k: u64) -> BigRational {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(2 * k - i) / BigInt::from(i + 1);
    }
    BigRational::new(&c * &c, BigInt::one() << (4 * k))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Rational coefficients of `p_ℓ(x) = x ₂F₁(½, ½; ℓ; x²)`:
/// `C(2k,k)² / (16^k C(k+ℓ−1, ℓ−1))`.
pub fn p_ell_coeffs(ell: u32, count: usize) -> Result<ExactOddSeries> {
    if ell < 1 {
        return Err(Error::InvalidInput("ell must be at least 1".into()));
    }
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let l = ell as u64;
    let r = (0..count as u64)
        .map(|k| central_sq(k) / BigRational::from_integer(binomial(k + l - 1, l - 1)))
        .collect();
    Ok(ExactOddSeries::new(r, 0, 0))
}

/// `p = (9π/32) p₃ = λ⁻¹ p₃`.
pub fn p_coeffs(count: usize) -> Result<ExactOddSeries> {
    let p3 = p_ell_coeffs(3, count)?;
    Ok(ExactOddSeries::new(p3.rational, 0, -1))
}

/// `h = (π/4) p₂ = (8/9) λ⁻¹ p₂`.
pub fn h_coeffs(count: usize) -> Result<ExactOddSeries> {
    let p2 = p_ell_coeffs(2, count)?;
    let eight_ninths = BigRational::new(8.into(), 9.into());
    Ok(ExactOddSeries::new(
        p2.rational.iter().map(|r| r * &eight_ninths).collect(),
        0,
        -1,
    ))
}

/// Compositional inverse of the rational part `g(x) = x G(x²)`.
///
/// Writes `g⁻¹(y) = y F(y²)`, so `F(s)·G(s F(s)²) = 1`, and runs Newton's
/// method `F ← F − (F G(Q) − 1)/(G(Q) + 2Q G′(Q))` with `Q = sF²`, doubling
/// the held order each step.
pub fn revert_rational(g: &[BigRational], count: usize) -> Result<Vec<BigRational>> {
    if g.is_empty() || g[0].is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let big_g = QSeries::from_rationals(&g[..g.len().min(count)]);
    let dg = big_g.derivative();
    let mut f = QSeries::constant(g[0].recip(), 1);
    let mut prec = 1;
    let one = QSeries::constant(BigRational::one(), 1);
    let two = BigRational::from_integer(2.into());
    while prec < count {
        prec = (2 * prec).min(count);
        let q = f.mul_trunc(&f, prec).shift_one().truncate(prec);
        let gq = big_g.compose(&q, prec)?;
        let dgq = dg.compose(&q, prec)?;
        let resid = f.mul_trunc(&gq, prec).sub(&one);
        let jac = gq.add(&q.mul_trunc(&dgq, prec).scale(&two));
        let step = resid.mul_trunc(&jac.inverse(prec)?, prec);
        f = f.sub(&step).truncate(prec);
    }
    let mut out = f.to_rationals();
    out.resize(count, BigRational::zero());
    Ok(out)
}

/// Compositional inverse with the `λ` scale carried over: `f(x) = λ^β g(λ^α x)`
/// inverts to `λ^{−α} g⁻¹(λ^{−β} y)`.
pub fn revert_series(s: &ExactOddSeries, count: usize) -> Result<ExactOddSeries> {
    let d = revert_rational(&s.rational, count)?;
    Ok(ExactOddSeries::new(d, -s.offset, -s.per_degree))
}

/// `(g ∘ h)` on rational parts to `count` odd terms.
pub fn compose_rational(
    g: &[BigRational],
    h: &[BigRational],
    count: usize,
) -> Result<Vec<BigRational>> {
    // g(x) = x G(x²), h(y) = y H(y²); g(h(y)) = y H(s) G(s H(s)²).
    let big_g = QSeries::from_rationals(&g[..g.len().min(count)]);
    let big_h = QSeries::from_rationals(&h[..h.len().min(count)]);
    let q = big_h.mul_trunc(&big_h, count).shift_one().truncate(count);
    let out = big_h.mul_trunc(&big_g.compose(&q, count)?, count);
    let mut v = out.to_rationals();
    v.resize(count, BigRational::zero());
    Ok(v)
}

/// Lagrange inversion `d_k = (1/(2k+1)) [s^k] G(s)^{−(2k+1)}`.
pub fn lagrange_coefficient(g: &[BigRational], k: usize) -> Result<BigRational> {
    let n = k + 1;
    let big_g = QSeries::from_rationals(&g[..g.len().min(n)]);
    let inv = big_g.inverse(n)?;
    let pw = inv.pow_trunc(2 * k as u64 + 1, n);
    Ok(pw.coeff(k) / BigRational::from_integer(BigInt::from(2 * k + 1)))
}

/// Exact sign pattern of the inverse coefficients of `p_ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignReport {
    pub ell: u32,
    pub count: usize,
    /// Signs of `c₁, c₃, …`.
    pub signs: Vec<i32>,
    /// `c₁ > 0` and `c_{2k+1} < 0` for every `k ≥ 1` computed.
    pub first_positive_rest_negative: bool,
    /// `c₁ > 0` and `c_{2k+1} ≤ 0` for every `k ≥ 1` computed.
    pub first_positive_rest_nonpositive: bool,
    /// Indices `k ≥ 1` with `c_{2k+1} = 0`.
    pub zero_indices: Vec<usize>,
    pub positives_after_first: usize,
    pub zeros_after_first: usize,
    /// Float values of the coefficients.
    pub values: Vec<f64>,
}

pub fn coefficient_signs(ell: u32, count: usize) -> Result<SignReport> {
    if ell < 2 {
        return Err(Error::InvalidInput(format!("ell = {ell} < 2")));
    }
    let s = p_ell_coeffs(ell, count)?;
    let inv = revert_series(&s, count)?;
    let signs: Vec<i32> = (0..count).map(|k| inv.sign(k)).collect();
    let positives = signs.iter().skip(1).filter(|&&x| x > 0).count();
    let zeros = signs.iter().skip(1).filter(|&&x| x == 0).count();
    Ok(SignReport {
        ell,
        count,
        first_positive_rest_negative: signs[0] > 0 && signs.iter().skip(1).all(|&x| x < 0),
        first_positive_rest_nonpositive: signs[0] > 0 && positives == 0,
        zero_indices: (1..count).filter(|&k| signs[k] == 0).collect(),
        positives_after_first: positives,
        zeros_after_first: zeros,
        values: inv.coeffs_f64(),
        signs,
    })
}

/// Float reversion of an odd series given by its coefficients `g_k`.
pub fn revert_f64(g: &[f64], count: usize) -> Result<Vec<f64>> {
    if g.is_empty() || g[0] == 0.0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let mul = |a: &[f64], b: &[f64], n: usize| {
        let mut out = vec![0.0; n];
        for (i, x) in a.iter().enumerate().take(n) {
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let compose = |c: &[f64], q: &[f64], n: usize| {
        let d = c.len().min(n);
        let mut acc = vec![0.0; n];
        for j in (0..d).rev() {
            acc = mul(&acc, q, n);
            acc[0] += c[j];
        }
        acc
    };
    let inverse = |a: &[f64], n: usize| {
        let mut x = vec![0.0; n];
        x[0] = 1.0 / a[0];
        for k in 1..n {
            let s: f64 = (1..=k.min(a.len() - 1)).map(|j| a[j] * x[k - j]).sum();
            x[k] = -s / a[0];
        }
        x
    };
    let big_g = &g[..g.len().min(count)];
    let dg: Vec<f64> = big_g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect();
    let mut f = vec![1.0 / g[0]];
    let mut prec = 1;
    let mut polish = 0;
    // Doubling steps, then at most three polishing steps at full order.
    for _ in 0..64 {
        let n = if prec < count {
            (2 * prec).min(count)
        } else {
            count
        };
        prec = n;
        f.resize(n, 0.0);
        let mut q = vec![0.0; n];
        let f2 = mul(&f, &f, n);
        q[1..n].copy_from_slice(&f2[..n - 1]);
        let gq = compose(big_g, &q, n);
        let dgq = if dg.is_empty() {
            vec![0.0; n]
        } else {
            compose(&dg, &q, n)
        };
        let mut resid = mul(&f, &gq, n);
        resid[0] -= 1.0;
        let qd = mul(&q, &dgq, n);
        let jac: Vec<f64> = gq.iter().zip(&qd).map(|(a, b)| a + 2.0 * b).collect();
        let step = mul(&resid, &inverse(&jac, n), n);
        let change = step.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        f.iter_mut().zip(&step).for_each(|(x, s)| *x -= s);
        if n == count {
            polish += 1;
        }
        if n == count && (change < 1e-15 || polish >= 3) {
            return Ok(f);
        }
    }
    Err(Error::MaxIterations(64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        let p = p_coeffs(3).unwrap();
        assert!((p.coeff_f64(0) - 9.0 * std::f64::consts::PI / 32.0).abs() < 1e-15);
        assert_eq!(p_ell_coeffs(3, 1).unwrap().rational[0], BigRational::one());
        // k = 1 of p₃: (1/4)/C(3,2) = 1/12.
        assert_eq!(
            p_ell_coeffs(3, 2).unwrap().rational[1],
            BigRational::new(1.into(), 12.into())
        );
    }

    #[test]
    fn inverse_scale_and_first_terms() {
        let inv = revert_series(&p_coeffs(6).unwrap(), 6).unwrap();
        assert_eq!(inv.rational[0], BigRational::one());
        assert!((inv.coeff_f64(0) - lambda()).abs() < 1e-15);
        let c3 = inv.coeff_f64(1);
        assert!((c3 + lambda().powi(3) / 12.0).abs() < 1e-15, "{c3}");
    }

    #[test]
    fn newton_matches_lagrange() {
        let g = p_ell_coeffs(3, 12).unwrap().rational;
        let d = revert_rational(&g, 12).unwrap();
        for (k, dk) in d.iter().enumerate().take(11) {
            assert_eq!(*dk, lagrange_coefficient(&g, k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn float_reversion_matches_exact() {
        let g = p_ell_coeffs(3, 30).unwrap();
        let exact = revert_rational(&g.rational, 30).unwrap();
        let gf: Vec<f64> = g.rational.iter().map(|r| r.to_f64().unwrap()).collect();
        let fl = revert_f64(&gf, 30).unwrap();
        for k in 0..30 {
            let e = exact[k].to_f64().unwrap();
            // Later coefficients arise from cancellation of O(1) terms.
            assert!(
                (fl[k] - e).abs() <= 1e-10 * e.abs(),
                "{k}: {} vs {e}",
                fl[k]
            );
        }
    }
}
