//! Root counting by Descartes' rule of signs with Möbius bisection
//! (Vincent–Collins–Akritas), on exact integers.
//!
//! A zero sign-variation count proves the absence of roots; a count of one
//! proves exactly one simple root. Other counts trigger bisection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{IntPoly, Poly};
use crate::error::{Error, Result};

/// Bisection depth after which a subinterval is reported as unresolved.
pub const MAX_DEPTH: usize = 64;

/// Outcome of [`descartes_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootCount {
    /// Exact number of distinct roots in the open interval.
    Exact(usize),
    /// Bisection hit [`MAX_DEPTH`]; at least this many roots were isolated.
    AtLeast(usize),
}

impl RootCount {
    pub fn is_zero(self) -> bool {
        self == RootCount::Exact(0)
    }

    pub fn lower(self) -> usize {
        match self {
            RootCount::Exact(n) | RootCount::AtLeast(n) => n,
        }
    }
}

/// Distinct real roots of `p` in the open interval `(a, b)`.
pub fn descartes_count(p: &Poly, a: &BigRational, b: &BigRational) -> Result<RootCount> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Err(Error::InvalidInput(format!("empty interval ({a}, {b})")));
    }
    let count = |p: &Poly| {
        let q = to_unit_interval(&p.to_primitive_int(), a, b);
        let (q, _) = deflate_zero(q);
        let (q, _) = deflate_one(q);
        let mut found = 0;
        let exact = count_unit(q, 0, &mut found);
        if exact {
            RootCount::Exact(found)
        } else {
            RootCount::AtLeast(found)
        }
    };
    Ok(match count(p) {
        // Bisection cannot separate a repeated root; retry on p / gcd(p, p′).
        RootCount::AtLeast(_) => {
            let g = p.gcd(&p.derivative());
            count(&p.div_exact(&g)?)
        }
        exact => exact,
    })
}

/// Sign variations of `(1+t)^d q(1/(1+t))`, an upper bound on the number of
/// roots of `q` in `(0, 1)` with the same parity.
pub fn unit_interval_variations(q: &IntPoly) -> usize {
    let mut c: Vec<BigInt> = q.coeffs().iter().rev().cloned().collect();
    taylor_shift_one(&mut c);
    variations(&c)
}

/// `D^d p((A + W y)/D)` as an integer polynomial in `y`, where
/// `a = A/D` and `b − a = W/D`; roots in `(a, b)` map to roots in `(0, 1)`.
fn to_unit_interval(p: &IntPoly, a: &BigRational, b: &BigRational) -> IntPoly {
    let w = b - a;
    let d_common = a.denom().lcm(w.denom());
    let big_a = a.numer() * (&d_common / a.denom());
    let big_w = w.numer() * (&d_common / w.denom());
    let d = p.degree().expect("nonzero");
    // S(x) = D^d p(x/D).
    let mut dpow = BigInt::one();
    let mut s: Vec<BigInt> = vec![BigInt::zero(); d + 1];
    for k in (0..=d).rev() {
        s[k] = &p.coeffs()[k] * &dpow;
        dpow *= &d_common;
    }
    taylor_shift(&mut s, &big_a);
    let mut wpow = BigInt::one();
    for c in s.iter_mut() {
        *c *= &wpow;
        wpow *= &big_w;
    }
    IntPoly::new(s).primitive()
}

fn deflate_zero(q: IntPoly) -> (IntPoly, usize) {
    let k = q.coeffs().iter().take_while(|c| c.is_zero()).count();
    (IntPoly::new(q.coeffs()[k..].to_vec()), k)
}

fn deflate_one(mut q: IntPoly) -> (IntPoly, usize) {
    let mut k = 0;
    while q.degree().unwrap_or(0) > 0
        && q.coeffs()
            .iter()
            .fold(BigInt::zero(), |acc, c| acc + c)
            .is_zero()
    {
        // Synthetic division by (y − 1).
        let c = q.coeffs();
        let d = c.len() - 1;
        let mut out = vec![BigInt::zero(); d];
        let mut acc = BigInt::zero();
        for i in (1..=d).rev() {
            acc += &c[i];
            out[i - 1] = acc.clone();
        }
        q = IntPoly::new(out);
        k += 1;
    }
    (q, k)
}

/// Counts roots of `q` in `(0, 1)`; returns false when the depth limit was hit.
fn count_unit(q: IntPoly, depth: usize, found: &mut usize) -> bool {
    if q.degree().unwrap_or(0) == 0 {
        return true;
    }
    match unit_interval_variations(&q) {
        0 => return true,
        1 => {
            *found += 1;
            return true;
        }
        _ => {}
    }
    if depth >= MAX_DEPTH {
        return false;
    }
    // Left half: 2^d q(y/2); right half: the left polynomial shifted by one.
    let d = q.degree().expect("nonzero");
    let mut left: Vec<BigInt> = q.coeffs().to_vec();
    for (k, c) in left.iter_mut().enumerate() {
        *c <<= d - k;
    }
    let mut right = left.clone();
    taylor_shift_one(&mut right);
    let left = IntPoly::new(left).primitive();
    let right = IntPoly::new(right).primitive();
    // A root at the midpoint is the root of `right` at 0.
    let (right, mid) = deflate_zero(right);
    if mid > 0 {
        *found += 1;
    }
    let (left, _) = deflate_one(left);
    let ok_left = count_unit(left, depth + 1, found);
    let ok_right = count_unit(right, depth + 1, found);
    ok_left && ok_right
}

/// In place `c(y) ← c(y + 1)`.
fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
}

/// In place `c(y) ← c(y + s)`.
fn taylor_shift(c: &mut [BigInt], s: &BigInt) {
    if s.is_zero() {
        return;
    }
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * s;
            c[j] += t;
        }
    }
}

fn variations(c: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut v = 0;
    for x in c {
        if x.is_zero() {
            continue;
        }
        let pos = x > &BigInt::zero();
        if let Some(l) = last {
            if l != pos {
                v += 1;
            }
        }
        last = Some(pos);
    }
    v
}
