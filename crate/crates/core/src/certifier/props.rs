//! Exact certificates for the sign conditions behind the monotonicity of
//! `ω̃′`, `ω̃·p̃^{l/2}` and `1/μ`.
//!
//! Each certified quantity is an [`Expr`] over the truncations. It is
//! evaluated exactly as a [`UExpr`] in `u = x⁻²`, whose denominator
//! `u^a (1−u)^b` and odd factor `x⁻³` are positive for `x > 1`. A sign check
//! on `[x_a, x_b]` therefore counts the roots of the numerator polynomial on
//! the closed `u`-interval `[x_b⁻², x_a⁻²]` and reads the sign at one sample.
//! At `x = 1` a surviving factor `(1−u)^b` is a pole; the numerator is then
//! nonzero at `u = 1` because the representation is reduced.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::descartes::{descartes_count, RootCount};
use super::phi::{build_phi_u, eval_truncation_f64, Truncation, UExpr};
use super::poly::{int, rat, Poly};
use super::sturm::sturm_count_detail;
use crate::error::{Error, Result};

/// Exact root-counting back end used by the sign checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootCounter {
    /// Sturm chain with primitive pseudo-remainders.
    Sturm,
    /// Descartes rule of signs with bisection.
    Descartes,
    /// Both, and the counts must agree.
    Both,
}

/// Expression over the truncations, evaluated exactly or in `f64`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Phi(Truncation),
    /// Rational constant.
    Const(BigRational),
    /// `c · x⁻³`.
    InvCube(BigRational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn phi(t: Truncation) -> Expr {
        Expr::Phi(t)
    }

    pub fn square(self) -> Expr {
        self.clone().mul(self)
    }

    /// Exact `u`-form at truncation order `m`.
    pub fn to_uexpr(&self, m: u32, cache: &PhiCache) -> Result<UExpr> {
        Ok(match self {
            Expr::Phi(t) => cache.get(m, *t)?,
            Expr::Const(c) => UExpr::constant(c.clone()),
            Expr::InvCube(c) => UExpr::odd(Poly::constant(c.clone())),
            Expr::Add(a, b) => a.to_uexpr(m, cache)?.add(&b.to_uexpr(m, cache)?)?,
            Expr::Sub(a, b) => a.to_uexpr(m, cache)?.sub(&b.to_uexpr(m, cache)?)?,
            Expr::Mul(a, b) => a.to_uexpr(m, cache)?.mul(&b.to_uexpr(m, cache)?),
            Expr::Neg(a) => a.to_uexpr(m, cache)?.neg(),
        })
    }

    /// Float value straight from the truncation sums, independent of the
    /// exact polynomial representation.
    pub fn eval_f64(&self, m: u32, x: f64) -> f64 {
        match self {
            Expr::Phi(t) => eval_truncation_f64(m, *t, x),
            Expr::Const(c) => c.to_f64().unwrap_or(f64::NAN),
            Expr::InvCube(c) => c.to_f64().unwrap_or(f64::NAN) / (x * x * x),
            Expr::Add(a, b) => a.eval_f64(m, x) + b.eval_f64(m, x),
            Expr::Sub(a, b) => a.eval_f64(m, x) - b.eval_f64(m, x),
            Expr::Mul(a, b) => a.eval_f64(m, x) * b.eval_f64(m, x),
            Expr::Neg(a) => -a.eval_f64(m, x),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Phi(t) => write!(f, "{}", t.symbol()),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::InvCube(c) => write!(f, "{c}/x^3"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Neg(a) => write!(f, "-{a}"),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// Memoized truncations keyed by `(m, which)`.
#[derive(Default)]
pub struct PhiCache {
    map: Mutex<HashMap<(u32, Truncation), UExpr>>,
}

impl PhiCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, m: u32, t: Truncation) -> Result<UExpr> {
        if let Some(e) = self.map.lock().expect("cache lock").get(&(m, t)) {
            return Ok(e.clone());
        }
        let e = build_phi_u(m, t)?;
        self.map
            .lock()
            .expect("cache lock")
            .insert((m, t), e.clone());
        Ok(e)
    }
}

/// One certified sign condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignCheck {
    pub label: String,
    pub expression: String,
    /// `x`-interval as rational strings.
    pub interval: [String; 2],
    /// Closed `u = x⁻²` interval on which the numerator is root-counted.
    pub u_interval: [String; 2],
    /// Degree of the numerator in `u`.
    pub degree: usize,
    /// Distinct numerator roots in the closed `u`-interval.
    pub root_count: usize,
    pub counter: RootCounter,
    /// `x = 1` is a pole of the checked function.
    pub pole_at_one: bool,
    pub sample_x: String,
    pub sample_sign: i32,
    pub expected_sign: i32,
    pub passed: bool,
    pub seconds: f64,
}

/// An exact fact that is not a polynomial sign condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fact {
    pub label: String,
    pub detail: String,
    pub passed: bool,
}

/// Result of certifying one proposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub proposition: String,
    pub statement: String,
    pub m: u32,
    pub interval: [String; 2],
    pub checks: Vec<SignCheck>,
    pub facts: Vec<Fact>,
    pub notes: Vec<String>,
    pub verdict: bool,
    pub wall_time_s: f64,
}

impl Certificate {
    /// Human-readable proof log.
    pub fn log(&self) -> String {
        let mut s = format!(
            "{}: {} (m = {}) on [{}, {}]\n",
            self.proposition, self.statement, self.m, self.interval[0], self.interval[1]
        );
        for c in &self.checks {
            s += &format!(
                "  [{}] {} {} 0 on [{}, {}]: degree {} in u, {} roots, sign {} at x = {}{} ({:.2} s)\n",
                if c.passed { "ok" } else { "FAIL" },
                c.label,
                if c.expected_sign > 0 { ">" } else { "<" },
                c.interval[0],
                c.interval[1],
                c.degree,
                c.root_count,
                c.sample_sign,
                c.sample_x,
                if c.pole_at_one { ", pole at x = 1" } else { "" },
                c.seconds
            );
        }
        for f in &self.facts {
            s += &format!(
                "  [{}] {}: {}\n",
                if f.passed { "ok" } else { "FAIL" },
                f.label,
                f.detail
            );
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        s += &format!("  verdict: {} ({:.2} s)\n", self.verdict, self.wall_time_s);
        s
    }

    /// The first failing check or fact, if any.
    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{} on [{}, {}]", c.label, c.interval[0], c.interval[1]))
            .or_else(|| {
                self.facts
                    .iter()
                    .find(|f| !f.passed)
                    .map(|f| f.label.clone())
            })
    }
}

/// A sign condition before certification.
#[derive(Clone, Debug)]
pub struct SignClaim {
    pub label: String,
    pub expr: Expr,
    pub a: BigRational,
    pub b: BigRational,
    /// `1` for positive, `-1` for negative.
    pub expected_sign: i32,
}

impl SignClaim {
    pub fn new(
        label: &str,
        expr: Expr,
        a: &BigRational,
        b: &BigRational,
        expected_sign: i32,
    ) -> Self {
        SignClaim {
            label: label.into(),
            expr,
            a: a.clone(),
            b: b.clone(),
            expected_sign,
        }
    }
}

fn closed_root_count(
    p: &Poly,
    lo: &BigRational,
    hi: &BigRational,
    counter: RootCounter,
) -> Result<usize> {
    let sturm = || sturm_count_detail(p, lo, hi).map(|d| d.closed);
    let descartes = || -> Result<usize> {
        let open = match descartes_count(p, lo, hi)? {
            RootCount::Exact(n) => n,
            RootCount::AtLeast(n) => {
                return Err(Error::Numerical(format!(
                    "root isolation did not finish ({n}+ roots)"
                )));
            }
        };
        let ends = usize::from(p.sign_at(lo) == 0) + usize::from(p.sign_at(hi) == 0);
        Ok(open + ends)
    };
    match counter {
        RootCounter::Sturm => sturm(),
        RootCounter::Descartes => descartes(),
        RootCounter::Both => {
            let (s, d) = (sturm()?, descartes()?);
            if s != d {
                return Err(Error::Numerical(format!(
                    "root counters disagree: Sturm {s}, Descartes {d}"
                )));
            }
            Ok(s)
        }
    }
}

/// Certifies one sign condition on `[a, b]` with `1 ≤ a < b`.
pub fn certify_sign(
    claim: &SignClaim,
    m: u32,
    cache: &PhiCache,
    counter: RootCounter,
) -> Result<SignCheck> {
    let start = Instant::now();
    let one = BigRational::one();
    if claim.a < one || claim.a >= claim.b {
        return Err(Error::InvalidInput(format!(
            "interval [{}, {}] must satisfy 1 ≤ a < b",
            claim.a, claim.b
        )));
    }
    let e = claim.expr.to_uexpr(m, cache)?;
    let u_lo = (&claim.b * &claim.b).recip();
    let u_hi = (&claim.a * &claim.a).recip();
    let pole_at_one = u_hi == one && e.w_pow > 0;
    let (degree, roots, sample_sign, sample_x) = if e.num.is_zero() {
        (0, usize::MAX, 0, (&claim.a + &claim.b) / int(2))
    } else {
        let roots = closed_root_count(&e.num, &u_lo, &u_hi, counter)?;
        let sample_x = (&claim.a + &claim.b) / int(2);
        let v = e.eval(&sample_x)?;
        let sign = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        (e.degree(), roots, sign, sample_x)
    };
    let passed = roots == 0 && sample_sign == claim.expected_sign;
    Ok(SignCheck {
        label: claim.label.clone(),
        expression: claim.expr.to_string(),
        interval: [claim.a.to_string(), claim.b.to_string()],
        u_interval: [u_lo.to_string(), u_hi.to_string()],
        degree,
        root_count: roots,
        counter,
        pole_at_one,
        sample_x: sample_x.to_string(),
        sample_sign,
        expected_sign: claim.expected_sign,
        passed,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn certify_all(claims: &[SignClaim], m: u32, counter: RootCounter) -> Result<Vec<SignCheck>> {
    let cache = PhiCache::new();
    claims
        .par_iter()
        .map(|c| certify_sign(c, m, &cache, counter))
        .collect()
}

/// Lower and upper bounds on `ab` from `0 ≤ a_lo ≤ a ≤ a_hi`, `b_lo ≤ b ≤ b_hi`.
///
/// Returns `(min(a_lo b_lo, a_hi b_lo), max(a_lo b_hi, a_hi b_hi))`, tightened
/// to `(a_lo b_lo, a_hi b_hi)` when `b_nonneg` asserts `b ≥ 0`.
pub fn product_bound<T>(a_lo: T, a_hi: T, b_lo: T, b_hi: T, b_nonneg: bool) -> Result<(T, T)>
where
    T: Clone + PartialOrd + Zero + std::ops::Mul<Output = T> + fmt::Display,
{
    if a_lo < T::zero() || a_lo > a_hi || b_lo > b_hi {
        return Err(Error::InvalidInput(format!(
            "need 0 ≤ {a_lo} ≤ {a_hi} and {b_lo} ≤ {b_hi}"
        )));
    }
    if b_nonneg && b_hi < T::zero() {
        return Err(Error::InvalidInput(format!(
            "b ≥ 0 asserted but b ≤ {b_hi}"
        )));
    }
    let min = |p: T, q: T| if q < p { q } else { p };
    let max = |p: T, q: T| if q > p { q } else { p };
    if b_nonneg {
        let lo = a_lo.clone() * b_lo;
        return Ok((lo, a_hi * b_hi));
    }
    let lo = min(a_lo.clone() * b_lo.clone(), a_hi.clone() * b_lo);
    let hi = max(a_lo * b_hi.clone(), a_hi * b_hi);
    Ok((lo, hi))
}

/// Rational enclosure `lo < π < hi` from Machin's formula
/// `π = 16 arctan(1/5) − 4 arctan(1/239)` with alternating-series bounds.
pub fn pi_enclosure(terms: usize) -> (BigRational, BigRational) {
    // Partial sums of an alternating series with decreasing terms bracket it.
    let arctan_bounds = |q: i64| {
        let x = rat(1, q);
        let x2 = &x * &x;
        let mut pow = x.clone();
        let mut s = BigRational::zero();
        let mut prev = s.clone();
        for k in 0..terms.max(1) {
            prev = s.clone();
            let t = &pow / int(2 * k as i64 + 1);
            if k % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
            pow *= &x2;
        }
        if s > prev {
            (prev, s)
        } else {
            (s, prev)
        }
    };
    let (l5, u5) = arctan_bounds(5);
    let (l239, u239) = arctan_bounds(239);
    (int(16) * l5 - int(4) * u239, int(16) * u5 - int(4) * l239)
}

/// Default truncation order for [`certify_omega_tau`] and [`certify_omega_p7`].
pub const M_OMEGA: u32 = 50;
/// Default truncation order for [`certify_mu`].
pub const M_MU: u32 = 40;

#[allow(clippy::too_many_arguments)]
fn finish(
    proposition: &str,
    statement: &str,
    m: u32,
    interval: [&BigRational; 2],
    checks: Vec<SignCheck>,
    facts: Vec<Fact>,
    notes: Vec<String>,
    start: Instant,
) -> Certificate {
    let verdict = checks.iter().all(|c| c.passed) && facts.iter().all(|f| f.passed);
    Certificate {
        proposition: proposition.into(),
        statement: statement.into(),
        m,
        interval: [interval[0].to_string(), interval[1].to_string()],
        checks,
        facts,
        notes,
        verdict,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}

fn p(t: Truncation) -> Expr {
    Expr::phi(t)
}

fn c(n: i64) -> Expr {
    Expr::Const(int(n))
}

/// `φ″_{2,m} ≤ φ₂″` on `[1, 5]` holds for `m ≥ 34`: the omitted terms carry
/// the factor `2k + 5 − 3x² ≥ 75 − 75 = 0`.
fn phi2_second_fact(m: u32) -> Fact {
    Fact {
        label: "phi2second_m <= phi2'' on [1, 5]".into(),
        detail: format!(
            "omitted terms k ≥ {} have 2k + 5 ≥ 75 ≥ 3x² for x ≤ 5",
            m + 1
        ),
        passed: m >= 34,
    }
}

/// The four combinations bounding `ω̃′ = φ₂″φ₁ − φ₂φ₁″` from below.
pub fn omega_tau_claims(a: &BigRational, b: &BigRational) -> Vec<SignClaim> {
    use Truncation::*;
    let mut out = Vec::new();
    for (i, f1) in [Phi1, Phi1Hat].into_iter().enumerate() {
        for (j, f2) in [Phi2, Phi2Hat].into_iter().enumerate() {
            let e = p(Phi2Second).mul(p(f1)).sub(p(f2).mul(p(Phi1Tilde)));
            out.push(SignClaim::new(
                &format!("omega_tilde' lower bound {}", 2 * i + j + 1),
                e,
                a,
                b,
                1,
            ));
        }
    }
    out
}

/// Certifies `ω̃′ > 0` on `(1, b]`, so the first zero `τ` of `ω̃′` exceeds `b`.
/// The default claim uses `b = 1732/1000`.
pub fn certify_omega_tau_on(m: u32, b: &BigRational, counter: RootCounter) -> Result<Certificate> {
    let start = Instant::now();
    let a = int(1);
    let checks = certify_all(&omega_tau_claims(&a, b), m, counter)?;
    // At x = 1 only the k = 0 term of φ₂″ survives and φ₂(1) = 0.
    let cache = PhiCache::new();
    let at_one = cache.get(m, Truncation::Phi2Second)?.eval(&a)?;
    let phi1_one = cache.get(m, Truncation::Phi1)?.eval(&a)?;
    let facts = vec![
        phi2_second_fact(m),
        Fact {
            label: "omega_tilde'(1) > 0".into(),
            detail: format!("phi2''(1) = {at_one} exactly, phi2(1) = 0, phi1(1) >= {phi1_one}"),
            passed: at_one == int(12) && phi1_one.is_positive(),
        },
    ];
    let notes = vec!["each of the four lower-bound combinations is certified separately".into()];
    Ok(finish(
        "omega_tau",
        "tau > b: omega_tilde' > 0 on [1, b]",
        m,
        [&a, b],
        checks,
        facts,
        notes,
        start,
    ))
}

pub fn certify_omega_tau(m: u32) -> Result<Certificate> {
    certify_omega_tau_on(m, &rat(1732, 1000), RootCounter::Descartes)
}

/// The lower bound `W = φ′_{2,m}φ_{1,m} − φ′_{1,m}φ̂_{2,m}` for `ω̃`.
fn omega_lower() -> Expr {
    use Truncation::*;
    p(Phi2Prime).mul(p(Phi1)).sub(p(Phi1Prime).mul(p(Phi2Hat)))
}

/// Claims for `ρ_l = l ω̃ (16φ₁φ₁′ + φ₂φ₂′) + ω̃′ p̃ > 0` on `[a, b]`.
pub fn omega_p_claims(l: i64, a: &BigRational, b: &BigRational) -> Vec<SignClaim> {
    use Truncation::*;
    let first = c(l).mul(omega_lower()).mul(
        c(16)
            .mul(p(Phi1))
            .mul(p(Phi1Bar))
            .add(p(Phi2).mul(p(Phi2Prime))),
    );
    let second = p(Phi2Second)
        .mul(p(Phi1Hat))
        .sub(p(Phi2).mul(p(Phi1Tilde)))
        .mul(c(16).mul(p(Phi1Hat).square()).add(p(Phi2Hat).square()));
    vec![
        SignClaim::new("phi1bar_m", p(Phi1Bar), a, b, 1),
        SignClaim::new("phi1tilde_m", p(Phi1Tilde), a, b, -1),
        SignClaim::new("phi2second_m", p(Phi2Second), a, b, -1),
        SignClaim::new("omega_tilde lower bound", omega_lower(), a, b, 1),
        SignClaim::new(&format!("rho_{l} lower bound"), first.add(second), a, b, 1),
    ]
}

/// Certifies that `ω|p⁺|^l` increases on `[a, b]`.
pub fn certify_omega_p_on(
    m: u32,
    l: i64,
    a: &BigRational,
    b: &BigRational,
    counter: RootCounter,
) -> Result<Certificate> {
    let start = Instant::now();
    let checks = certify_all(&omega_p_claims(l, a, b), m, counter)?;
    let facts = vec![phi2_second_fact(m)];
    let notes = vec![
        "on [1, tau] omega is increasing, so every power l works there".into(),
        "the second term is only needed when omega_tilde' < 0; then phi2'' < 0 and the bound applies".into(),
    ];
    Ok(finish(
        "omega_p7",
        &format!("omega*|p+|^{l} increases"),
        m,
        [a, b],
        checks,
        facts,
        notes,
        start,
    ))
}

pub fn certify_omega_p7(m: u32) -> Result<Certificate> {
    certify_omega_p_on(m, 7, &rat(1732, 1000), &int(5), RootCounter::Descartes)
}

/// `P_lo = 16φ_{1,m}² + φ_{2,m}²`.
fn p_lo() -> Expr {
    use Truncation::*;
    c(16).mul(p(Phi1).square()).add(p(Phi2).square())
}

/// `P_hi = 16φ̂_{1,m}² + φ̂_{2,m}²`.
fn p_hi() -> Expr {
    use Truncation::*;
    c(16).mul(p(Phi1Hat).square()).add(p(Phi2Hat).square())
}

/// `−(φ̄_{2,m}φ̂_{1,m} − φ_{2,m}·low)(16φ′_{1,m}² + φ̄_{2,m}²)` with `low` a
/// nonnegative lower bound for `φ₁′`.
fn third_term(low: Expr) -> Expr {
    use Truncation::*;
    p(Phi2Bar)
        .mul(p(Phi1Hat))
        .sub(p(Phi2).mul(low))
        .mul(c(16).mul(p(Phi1Prime).square()).add(p(Phi2Bar).square()))
        .neg()
}

/// Claims for `ν > 0` on `[a, b]` with `φ̄_{1,m} > 0` there.
pub fn mu_far_claims(a: &BigRational, b: &BigRational) -> Vec<SignClaim> {
    use Truncation::*;
    let t1 = [
        p(Phi2Second).mul(p(Phi1Bar)).mul(p_lo()),
        p(Phi2Second).mul(p(Phi1Prime)).mul(p_hi()),
    ];
    let t2 = [
        p(Phi2Bar).mul(p(Phi1Tilde)).mul(p_hi()).neg(),
        p(Phi2Prime).mul(p(Phi1Tilde)).mul(p_lo()).neg(),
    ];
    let t3 = third_term(p(Phi1Bar));
    let mut out = vec![SignClaim::new("phi1bar_m", p(Phi1Bar), a, b, 1)];
    for (i, x) in t1.iter().enumerate() {
        for (j, y) in t2.iter().enumerate() {
            let e = x.clone().add(y.clone()).add(t3.clone());
            out.push(SignClaim::new(
                &format!("nu lower bound {}", 2 * i + j + 1),
                e,
                a,
                b,
                1,
            ));
        }
    }
    out
}

/// Claims for `ν > 0` on `[1, x₁]`, using `φ₁′ ≥ 7/(11x³)` and the values of
/// `φ̂_{1,m}`, `φ̂_{2,m}` at `x₁`.
pub fn mu_near_claims(m: u32, x1: &BigRational, cache: &PhiCache) -> Result<Vec<SignClaim>> {
    use Truncation::*;
    let a = int(1);
    let h1 = cache.get(m, Phi1Hat)?.eval(x1)?;
    let h2 = cache.get(m, Phi2Hat)?.eval(x1)?;
    let p_at = int(16) * &h1 * &h1 + &h2 * &h2;
    let low = Expr::InvCube(rat(7, 11));
    let t1 = p(Phi2Second).mul(low.clone()).mul(p_lo());
    let t2 = p(Phi2Bar).mul(p(Phi1Tilde)).mul(Expr::Const(p_at)).neg();
    let t3 = third_term(low);
    Ok(vec![
        SignClaim::new("phi2second_m", p(Phi2Second), &a, x1, 1),
        SignClaim::new("phi1second_m", p(Phi1Second), &a, x1, 1),
        SignClaim::new("nu lower bound near 1", t1.add(t2).add(t3), &a, x1, 1),
    ])
}

/// Certifies `ν > 0` on `[1, b]`, split at `x₁`, so `μ` decreases there.
pub fn certify_mu_on(
    m: u32,
    x1: &BigRational,
    b: &BigRational,
    counter: RootCounter,
) -> Result<Certificate> {
    let start = Instant::now();
    let cache = PhiCache::new();
    let mut claims = mu_near_claims(m, x1, &cache)?;
    claims.extend(mu_far_claims(x1, b));
    let checks: Vec<SignCheck> = claims
        .par_iter()
        .map(|c| certify_sign(c, m, &cache, counter))
        .collect::<Result<_>>()?;
    let (pi_lo, pi_hi) = pi_enclosure(12);
    let facts = vec![
        phi2_second_fact(m),
        Fact {
            label: "pi enclosure".into(),
            detail: format!(
                "{:.15} < pi < {:.15}",
                pi_lo.to_f64().unwrap_or(0.0),
                pi_hi.to_f64().unwrap_or(0.0)
            ),
            passed: pi_lo < pi_hi && pi_hi < rat(104348, 33215) && pi_lo > rat(103993, 33102),
        },
        Fact {
            label: "2/pi > 7/11".into(),
            detail: "22 * 33215 > 7 * 104348 and pi < 104348/33215".into(),
            passed: pi_hi < rat(22, 7) && int(22 * 33215) > int(7 * 104348),
        },
    ];
    let notes = vec![
        "phi1'(x) = (6/pi) x^-3 int sin^2 (1 - x^-2 sin^2)^(1/2) >= 2/(pi x^3) >= 7/(11 x^3)".into(),
        "near x = 1, phi1bar_m is negative, so the omega_tilde upper bound uses 7/(11 x^3) as the lower bound for phi1'".into(),
        "phi1second_m > 0 near 1 gives phi1tilde_m >= phi1'' > 0; phi1, phi2 increase, so p_tilde(x) <= p_tilde(x1) < P_hi(x1)".into(),
    ];
    Ok(finish(
        "mu",
        "nu > 0 on [1, b], so mu decreases",
        m,
        [&int(1), b],
        checks,
        facts,
        notes,
        start,
    ))
}

pub fn certify_mu(m: u32) -> Result<Certificate> {
    certify_mu_on(m, &rat(101, 100), &rat(1732, 1000), RootCounter::Descartes)
}

/// Claims of one proposition by name, for sampling-based cross-checks.
pub fn claims_for(proposition: &str, m: u32) -> Result<Vec<SignClaim>> {
    match proposition {
        "omega_tau" => Ok(omega_tau_claims(&int(1), &rat(1732, 1000))),
        "omega_p7" => Ok(omega_p_claims(7, &rat(1732, 1000), &int(5))),
        "mu" => {
            let cache = PhiCache::new();
            let mut v = mu_near_claims(m, &rat(101, 100), &cache)?;
            v.extend(mu_far_claims(&rat(101, 100), &rat(1732, 1000)));
            Ok(v)
        }
        other => Err(Error::InvalidInput(format!("unknown proposition {other}"))),
    }
}
