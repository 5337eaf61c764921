//! Boundary values `p⁺(x) = ψ₁(x) + iψ₂(x)` of the continuation of `p` to
//! the upper half plane for `x ≥ 1`, the derived functions `θ`, `ω`, `μ`,
//! and the numeric tail-bound chain for the inverse coefficients.
//!
//! With `u = x⁻²` and `w = 1 − u`:
//! `ψ₁ = (3π/4) φ₁(u)` and `ψ₂ = (3π/16) φ₂(w)`, where `φ₁ = ¾(4/3 − u + Σ_{k≥2} a_k u^k)`
//! and `φ₂ = Σ_{k≥0} b_k w^{k+2}`. Series evaluation is cross-checked
//! against the integral forms `ψ₁ = (3/2)∫(1 − u sin²)^{3/2}` and
//! `ψ₂ = (3/2) w² ∫ sin⁴/√(1 − w sin²)` over `[0, π/2]`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::integrate;

/// Series truncation policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// Terms `k ≤ m`.
    Fixed(usize),
    /// Sum until the terms fall below `1e-17` of the partial sum, using the
    /// integral forms for `ψ₁` and its derivatives when `u > 0.95`.
    Converged,
}

/// Which continued function to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Psi1,
    Psi2,
    Theta,
    AbsPPlus,
    Omega,
    Mu,
}

impl std::str::FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "psi1" => Which::Psi1,
            "psi2" => Which::Psi2,
            "theta" => Which::Theta,
            "abs_p_plus" => Which::AbsPPlus,
            "omega" => Which::Omega,
            "mu" => Which::Mu,
            other => return Err(Error::InvalidInput(format!("unknown function {other}"))),
        })
    }
}

/// `ψ₁, ψ₂` and their first two derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet {
    pub x: f64,
    pub psi1: f64,
    pub psi2: f64,
    pub dpsi1: f64,
    pub dpsi2: f64,
    pub d2psi1: f64,
    pub d2psi2: f64,
}

impl Jet {
    pub fn theta(&self) -> f64 {
        self.psi2.atan2(self.psi1)
    }

    pub fn abs_p_plus(&self) -> f64 {
        self.psi1.hypot(self.psi2)
    }

    /// `ω = ψ₂′ψ₁ − ψ₁′ψ₂`.
    pub fn omega(&self) -> f64 {
        self.dpsi2 * self.psi1 - self.dpsi1 * self.psi2
    }

    /// `ω′ = ψ₂″ψ₁ − ψ₁″ψ₂`.
    pub fn omega_prime(&self) -> f64 {
        self.d2psi2 * self.psi1 - self.d2psi1 * self.psi2
    }

    /// `μ = (ψ₂′ψ₂ + ψ₁′ψ₁)/ω`.
    pub fn mu(&self) -> f64 {
        (self.dpsi2 * self.psi2 + self.dpsi1 * self.psi1) / self.omega()
    }

    pub fn get(&self, which: Which) -> f64 {
        match which {
            Which::Psi1 => self.psi1,
            Which::Psi2 => self.psi2,
            Which::Theta => self.theta(),
            Which::AbsPPlus => self.abs_p_plus(),
            Which::Omega => self.omega(),
            Which::Mu => self.mu(),
        }
    }
}

const MAX_TERMS: usize = 5_000_000;
const REL_TERM_TOL: f64 = 1e-17;

/// Evaluator for the continued functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuedP {
    pub truncation: Truncation,
}

impl Default for ContinuedP {
    fn default() -> Self {
        ContinuedP {
            truncation: Truncation::Converged,
        }
    }
}

/// Sums `Σ_k term(k)` for `k ≥ start` under the truncation policy.
fn sum_series(start: usize, trunc: Truncation, mut term: impl FnMut(usize) -> f64) -> f64 {
    let mut s = 0.0;
    match trunc {
        Truncation::Fixed(m) => {
            for k in start..=m {
                s += term(k);
            }
        }
        Truncation::Converged => {
            let mut small = 0;
            for k in start..MAX_TERMS {
                let t = term(k);
                s += t;
                // Terms are eventually monotone; require a run of tiny terms.
                if t.abs() <= REL_TERM_TOL * s.abs().max(1e-300) {
                    small += 1;
                    if small >= 4 {
                        break;
                    }
                } else {
                    small = 0;
                }
            }
        }
    }
    s
}

impl ContinuedP {
    pub fn new(truncation: Truncation) -> Self {
        ContinuedP { truncation }
    }

    /// `ψ₁, ψ₂` and derivatives at `x ≥ 1`.
    pub fn jet(&self, x: f64) -> Result<Jet> {
        if !x.is_finite() || x < 1.0 {
            return Err(Error::Domain(format!(
                "continued functions need x >= 1, got {x}"
            )));
        }
        let u = 1.0 / (x * x);
        let w = 1.0 - u;
        let x3 = u / x;
        let use_quad = matches!(self.truncation, Truncation::Converged) && u > 0.95;
        let (psi1, dpsi1, d2psi1) = if use_quad {
            psi1_quadrature(x)?
        } else {
            self.psi1_series(x)
        };
        // ψ₂ family: b_k w^{k+2} with b_{k+1}/b_k = (2k+1)(2k+5)/(4(k+1)(k+3)).
        let mut b = 1.5;
        let mut wk = 1.0;
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        let mut small = 0;
        let limit = match self.truncation {
            Truncation::Fixed(m) => m + 1,
            Truncation::Converged => MAX_TERMS,
        };
        for k in 0..limit {
            let kf = k as f64;
            let e = (kf + 2.0) * b;
            let t0 = b * wk * w * w;
            let t1 = e * wk * w;
            let t2 = e * wk * ((2.0 * kf + 5.0) * u * u * u - 3.0 * u * u);
            s0 += t0;
            s1 += t1;
            s2 += t2;
            if matches!(self.truncation, Truncation::Converged) {
                let tiny = |t: f64, s: f64| t.abs() <= REL_TERM_TOL * s.abs().max(1e-300);
                if tiny(t0, s0) && tiny(t1, s1) && tiny(t2, s2) {
                    small += 1;
                    if small >= 4 {
                        break;
                    }
                } else {
                    small = 0;
                }
            }
            if wk == 0.0 && k > 0 {
                break;
            }
            b *= (2.0 * kf + 1.0) * (2.0 * kf + 5.0) / (4.0 * (kf + 1.0) * (kf + 3.0));
            wk *= w;
        }
        let scale2 = 3.0 * PI / 16.0;
        Ok(Jet {
            x,
            psi1,
            psi2: scale2 * s0,
            dpsi1,
            dpsi2: scale2 * 2.0 * x3 * s1,
            d2psi1,
            d2psi2: scale2 * 2.0 * s2,
        })
    }

    /// `(ψ₁, ψ₁′, ψ₁″)` from the `u`-series.
    fn psi1_series(&self, x: f64) -> (f64, f64, f64) {
        let u = 1.0 / (x * x);
        // a_{k+1}/a_k = (2k−3)(2k+1)/(4(k+1)²), a_2 = 3/16.
        let mut a = 3.0 / 16.0;
        let mut uk = u * u;
        let mut prev_k = 2;
        let mut terms = |k: usize| {
            while prev_k < k {
                let kf = prev_k as f64;
                a *= (2.0 * kf - 3.0) * (2.0 * kf + 1.0) / (4.0 * (kf + 1.0) * (kf + 1.0));
                uk *= u;
                prev_k += 1;
            }
            (a, uk)
        };
        let mut s0 = 0.0;
        let mut s1 = 0.0;
        let mut s2 = 0.0;
        let _ = sum_series(2, self.truncation, |k| {
            let (ak, uk) = terms(k);
            let kf = k as f64;
            let t0 = ak * uk;
            s0 += t0;
            s1 += kf * ak * uk / u;
            s2 += kf * (2.0 * kf + 1.0) * ak * uk * u;
            // Convergence is driven by the slowest of the three sums.
            kf * (2.0 * kf + 1.0) * t0
        });
        let phi1 = 0.75 * (4.0 / 3.0 - u + s0);
        let dphi1 = 1.5 * (u / x) * (1.0 - s1);
        let d2phi1 = 1.5 * (-3.0 * u * u + s2);
        let scale1 = 0.75 * PI;
        (scale1 * phi1, scale1 * dphi1, scale1 * d2phi1)
    }

    pub fn eval(&self, x: f64, which: Which) -> Result<f64> {
        Ok(self.jet(x)?.get(which))
    }
}

/// `(ψ₁, ψ₁′, ψ₁″)` from the integral forms.
pub fn psi1_quadrature(x: f64) -> Result<(f64, f64, f64)> {
    let u = 1.0 / (x * x);
    let q = |f: &dyn Fn(f64) -> f64| integrate(f, 0.0, FRAC_PI_2, 1e-15, 1e-14).map(|r| r.0);
    // 1 − u sin² written as cos² + w sin² to avoid cancellation near u = 1.
    let base = |s: f64| {
        let (sn, cs) = s.sin_cos();
        cs * cs + (1.0 - u) * sn * sn
    };
    let j0 = q(&|s| base(s).powf(1.5))?;
    let j1 = q(&|s| s.sin().powi(2) * base(s).sqrt())?;
    let psi1 = 1.5 * j0;
    let dpsi1 = 4.5 * u / x * j1;
    let d2psi1 = if u >= 1.0 {
        f64::INFINITY
    } else {
        let j2 = q(&|s| s.sin().powi(4) / base(s).sqrt())?;
        4.5 * (-3.0 * u * u * j1 + u * u * u * j2)
    };
    Ok((psi1, dpsi1, d2psi1))
}

/// `(ψ₂, ψ₂′)` from the integral forms.
pub fn psi2_quadrature(x: f64) -> Result<(f64, f64)> {
    let u = 1.0 / (x * x);
    let w = 1.0 - u;
    let q = |f: &dyn Fn(f64) -> f64| integrate(f, 0.0, FRAC_PI_2, 1e-15, 1e-14).map(|r| r.0);
    let base = |s: f64| {
        let (sn, cs) = s.sin_cos();
        cs * cs + u * sn * sn
    };
    let k0 = q(&|s| s.sin().powi(4) / base(s).sqrt())?;
    let k1 = q(&|s| s.sin().powi(6) / base(s).powf(1.5))?;
    let psi2 = 1.5 * w * w * k0;
    // dw/dx = 2x⁻³, d/dw [w² K(w)] = 2wK + w² K′ with K′ = ½ ∫ sin⁶/(1 − w sin²)^{3/2}.
    let dpsi2 = 1.5 * (2.0 * w * k0 + 0.5 * w * w * k1) * 2.0 * u / x;
    Ok((psi2, dpsi2))
}

/// Landmark values of the continued functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Landmarks {
    /// First zero of `ω′` on `(1, 2)`.
    pub tau: f64,
    pub omega_tau: f64,
    pub theta_tau: f64,
    /// `θ(5)`.
    pub theta0: f64,
    /// `q = μ(τ)`.
    pub q: f64,
    /// `c = |p⁺(τ)| e^{−qθ(τ)}`.
    pub c: f64,
    /// `ψ₂(5)`.
    pub psi2_at_5: f64,
}

/// First zero of `ω′` on `(1, 2)`, by a grid scan and bisection to `1e-13`.
pub fn find_tau(cp: &ContinuedP) -> Result<f64> {
    let f = |x: f64| cp.jet(x).map(|j| j.omega_prime());
    let mut lo = 1.01;
    let mut flo = f(lo)?;
    if flo <= 0.0 {
        return Err(Error::Bracket(format!(
            "omega'({lo}) = {flo} is not positive"
        )));
    }
    let mut hi = None;
    let mut x = lo;
    while x < 2.0 {
        let nx = x + 0.01;
        let fx = f(nx)?;
        if fx <= 0.0 {
            hi = Some(nx);
            break;
        }
        lo = nx;
        flo = fx;
        x = nx;
    }
    let mut hi = hi.ok_or_else(|| Error::Bracket("omega' has no sign change on (1, 2)".into()))?;
    let _ = flo;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn landmarks(cp: &ContinuedP) -> Result<Landmarks> {
    let tau = find_tau(cp)?;
    let jt = cp.jet(tau)?;
    let j5 = cp.jet(5.0)?;
    let q = jt.mu();
    Ok(Landmarks {
        tau,
        omega_tau: jt.omega(),
        theta_tau: jt.theta(),
        theta0: j5.theta(),
        q,
        c: jt.abs_p_plus() * (-q * jt.theta()).exp(),
        psi2_at_5: j5.psi2,
    })
}

/// `χ = θ⁻¹` on `[1, hi]`, by bisection.
pub fn chi(cp: &ContinuedP, y: f64, hi: f64) -> Result<f64> {
    let (mut a, mut b) = (1.0, hi);
    let tb = cp.jet(b)?.theta();
    if !(0.0..=tb).contains(&y) {
        return Err(Error::Bracket(format!("theta = {y} outside [0, {tb}]")));
    }
    while b - a > 1e-14 {
        let m = 0.5 * (a + b);
        if cp.jet(m)?.theta() < y {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Numeric reproduction of the inequality chain showing `c_n < 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    pub n: usize,
    pub alpha: f64,
    /// `2c²(1 + e^{−qπ}) / (ω(τ)π(1 + q²))`.
    pub i1_constant: f64,
    /// `i1_constant / n² · c^{−n}`.
    pub i1_lb: f64,
    /// Upper bound `e^{−(n−2)qπ/n}` for `I₂/I₁`.
    pub i2_ratio_ub: f64,
    /// `I₂_ub = i2_ratio_ub · I₁` evaluated with the quadrature `I₁`.
    pub i2_ub: f64,
    /// Quadrature values of `I₁`, `I₂`.
    pub i1: f64,
    pub i2: f64,
    /// `(α/n) ψ₂(α)^{−n}`.
    pub r_bound: f64,
    /// `(2/(πn)) ∫₁^α Im(p⁺(x)^{−n}) dx`.
    pub integral: f64,
    /// `i1_lb (1 − i2_ratio_ub) > r_bound`.
    pub cn_negative: bool,
}

/// The tail-bound chain at odd `n ≥ 21` with cut point `alpha`.
pub fn haagerup_tail_bound(
    cp: &ContinuedP,
    lm: &Landmarks,
    n: usize,
    alpha: f64,
) -> Result<TailBound> {
    if n < 21 || n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "n = {n} must be odd and at least 21"
        )));
    }
    let nf = n as f64;
    let (q, c) = (lm.q, lm.c);
    let k = 2.0 * c * c * (1.0 + (-q * PI).exp()) / (lm.omega_tau * PI * (1.0 + q * q));
    let i1_lb = k / (nf * nf) * c.powf(-nf);
    let ratio = (-(nf - 2.0) * q * PI / nf).exp();
    let psi2_alpha = cp.jet(alpha)?.psi2;
    let r_bound = alpha / nf * psi2_alpha.powf(-nf);
    let integrand = |x: f64| {
        let j = cp.jet(x).expect("x >= 1");
        j.abs_p_plus().powf(-nf) * (nf * j.theta()).sin().abs()
    };
    let x1 = chi(cp, PI / nf, alpha)?;
    let x2 = chi(cp, 2.0 * PI / nf, alpha)?;
    let pref = 2.0 / (PI * nf);
    let i1 = pref * integrate(integrand, 1.0, x1, 1e-300, 1e-10)?.0;
    let i2 = pref * integrate(integrand, x1, x2, 1e-300, 1e-10)?.0;
    let integral = pref
        * integrate(
            |x| {
                let j = cp.jet(x).expect("x >= 1");
                -j.abs_p_plus().powf(-nf) * (nf * j.theta()).sin()
            },
            1.0,
            alpha,
            1e-300,
            1e-10,
        )?
        .0;
    Ok(TailBound {
        n,
        alpha,
        i1_constant: k,
        i1_lb,
        i2_ratio_ub: ratio,
        i2_ub: ratio * i1,
        i1,
        i2,
        r_bound,
        integral,
        cn_negative: i1_lb * (1.0 - ratio) > r_bound,
    })
}
