//! Float evaluation of `p` and the derived constants: `x₀`, `c₀`, the
//! Grothendieck-constant bounds, the Goemans–Williamson-type ratio and the
//! diagonally-dominant constant.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::exact::{lambda, p_coeffs, revert_f64, revert_series};
use crate::error::{Error, Result};
use crate::gaussian::p_quadrature;

/// Bisection tolerance for `x₀`.
pub const X0_TOL: f64 = 1e-12;
/// Golden-section tolerance for the minimizer of `(1 + p(x))/(1 + x)`.
pub const ALPHA_TOL: f64 = 1e-10;

/// `p(x) = Σ_k (9π/32) C(2k,k)²/(16^k C(k+2,2)) x^{2k+1}`, first `terms` terms.
pub fn p_series_f64(x: f64, terms: usize) -> f64 {
    let x2 = x * x;
    let mut r = 1.0;
    let mut xk = x;
    let mut s = 0.0;
    for k in 0..terms {
        s += r * xk;
        let kf = k as f64;
        let t = (2.0 * kf + 1.0) / (2.0 * kf + 2.0);
        r *= t * t * (kf + 1.0) / (kf + 3.0);
        xk *= x2;
    }
    s / lambda()
}

/// Float coefficients of `p`, by the ratio recurrence.
pub fn p_coeffs_f64(count: usize) -> Vec<f64> {
    let mut r = 1.0 / lambda();
    (0..count)
        .map(|k| {
            let c = r;
            let kf = k as f64;
            let t = (2.0 * kf + 1.0) / (2.0 * kf + 2.0);
            r *= t * t * (kf + 1.0) / (kf + 3.0);
            c
        })
        .collect()
}

/// Derived constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Root of `p(x) = 9π(1 + x)/64` in `[0, 1]`.
    pub x0: f64,
    /// `9π(1 + x₀)/64 = p(x₀)`.
    pub c0: f64,
    /// `1/c₀ = 64/(9π(1 + x₀))`.
    pub k_gh_bound: f64,
    /// `64/(9π) − 1`.
    pub k_gamma_bound: f64,
    /// `32/(9π)`.
    pub nesterov: f64,
    /// `min_{[0,1]} (1 + p(x))/(1 + x)`.
    pub alpha_gw: f64,
    /// Minimizer of `(1 + p(x))/(1 + x)`.
    pub alpha_argmin: f64,
    /// `1/α`.
    pub inv_alpha_gw: f64,
    /// `1 + (1 − 9π/32)/α`.
    pub dd_constant: f64,
}

fn gw_ratio(x: f64) -> Result<f64> {
    Ok((1.0 + p_quadrature(x)?) / (1.0 + x))
}

/// Computes every constant from the quadrature form of `p`.
pub fn solve_constants() -> Result<Constants> {
    let f = |x: f64| -> Result<f64> { Ok(p_quadrature(x)? - 9.0 * PI * (1.0 + x) / 64.0) };
    let (mut a, mut b) = (0.0, 1.0);
    let (fa, fb) = (f(a)?, f(b)?);
    if !(fa < 0.0 && fb > 0.0) {
        return Err(Error::Bracket(format!(
            "p(x) − 9π(1+x)/64 has signs {fa}, {fb} at 0 and 1"
        )));
    }
    while b - a > X0_TOL {
        let m = 0.5 * (a + b);
        if f(m)? < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let x0 = 0.5 * (a + b);
    let c0 = 9.0 * PI * (1.0 + x0) / 64.0;

    let (argmin, alpha) = golden_min(gw_ratio, 0.0, 1.0, ALPHA_TOL)?;
    // The minimizer must be interior with the derivative changing sign there.
    let h = 1e-4;
    let dl = (gw_ratio(argmin - h)? - gw_ratio(argmin - 2.0 * h)?) / h;
    let dr = (gw_ratio(argmin + 2.0 * h)? - gw_ratio(argmin + h)?) / h;
    if !(dl < 0.0 && dr > 0.0) {
        return Err(Error::Numerical(format!(
            "no derivative sign change at the minimizer {argmin} ({dl}, {dr})"
        )));
    }
    Ok(Constants {
        x0,
        c0,
        k_gh_bound: 1.0 / c0,
        k_gamma_bound: 2.0 * lambda() - 1.0,
        nesterov: lambda(),
        alpha_gw: alpha,
        alpha_argmin: argmin,
        inv_alpha_gw: 1.0 / alpha,
        dd_constant: 1.0 + (1.0 - 9.0 * PI / 32.0) / alpha,
    })
}

/// Golden-section search for the minimum of a unimodal function on `[a, b]`.
pub fn golden_min(
    f: impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

/// Coefficients `c_{2k+1}` of `p⁻¹`, `k < count`, rounded from the exact
/// reversion. Float reversion loses about `2k log₂ c₁` bits at order `k`.
pub fn inverse_coeffs_f64(count: usize) -> Result<Vec<f64>> {
    Ok(revert_series(&p_coeffs(count)?, count)?.coeffs_f64())
}

/// Float reversion of the float coefficients of `p`; accurate for the first
/// few dozen terms only.
pub fn inverse_coeffs_float_route(count: usize) -> Result<Vec<f64>> {
    revert_f64(&p_coeffs_f64(count), count)
}

/// `Σ_{k<count} |c_{2k+1}|`.
pub fn sum_abs_inverse(count: usize) -> Result<f64> {
    Ok(inverse_coeffs_f64(count)?.iter().map(|c| c.abs()).sum())
}

/// `ψ(x) = 2c₁x − p⁻¹(x)` from the first `count` inverse coefficients.
pub fn psi_truncated(x: f64, count: usize) -> Result<f64> {
    let c = inverse_coeffs_f64(count)?;
    let x2 = x * x;
    let inv = c.iter().rev().fold(0.0, |acc, ck| acc * x2 + ck) * x;
    Ok(2.0 * c[0] * x - inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_quadrature_agree() {
        for x in [0.0, 0.3, 0.7] {
            let a = p_series_f64(x, 200);
            let b = p_quadrature(x).unwrap();
            assert!((a - b).abs() < 1e-10, "x = {x}: {a} vs {b}");
        }
        // Slow convergence at the boundary: tail ~ 1/K².
        assert!((p_series_f64(1.0, 200_000) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn float_route_agrees_at_low_order() {
        let a = inverse_coeffs_f64(30).unwrap();
        let b = inverse_coeffs_float_route(30).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-9 * x.abs());
        }
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, v) = golden_min(|x| Ok((x - 0.3) * (x - 0.3) + 2.0), 0.0, 1.0, 1e-10).unwrap();
        // A quadratic minimum fixes the location only to about √ε.
        assert!((x - 0.3).abs() < 1e-7 && (v - 2.0).abs() < 1e-14);
    }
}
