//! Truncated power series over the rationals, stored as integer numerators
//! over one common positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `Σ num[k]/den · sᵏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    num: Vec<BigInt>,
    den: BigInt,
}

impl QSeries {
    pub fn from_rationals(cs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in cs {
            den = den.lcm(c.denom());
        }
        let num = cs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        QSeries { num, den }.normalized()
    }

    pub fn constant(c: BigRational, len: usize) -> Self {
        let mut v = vec![BigRational::zero(); len.max(1)];
        v[0] = c;
        Self::from_rationals(&v)
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        match self.num.get(k) {
            Some(n) => BigRational::new(n.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        (0..self.len()).map(|k| self.coeff(k)).collect()
    }

    /// Divides numerators and denominator by their common content.
    fn normalized(mut self) -> Self {
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if !g.is_one() && !g.is_zero() {
            for n in self.num.iter_mut() {
                *n /= &g;
            }
            self.den /= &g;
        }
        self
    }

    pub fn truncate(mut self, n: usize) -> Self {
        self.num.truncate(n);
        self
    }

    fn pad(mut self, n: usize) -> Self {
        if self.num.len() < n {
            self.num.resize(n, BigInt::zero());
        }
        self
    }

    pub fn mul_trunc(&self, o: &QSeries, n: usize) -> QSeries {
        let len = n.min((self.len() + o.len()).saturating_sub(1));
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in self.num.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.num.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        QSeries {
            num: out,
            den: &self.den * &o.den,
        }
        .normalized()
    }

    fn combine(&self, o: &QSeries, sign: i32) -> QSeries {
        let g = self.den.gcd(&o.den);
        let fa = &o.den / &g;
        let fb = &self.den / &g;
        let n = self.len().max(o.len());
        let zero = BigInt::zero();
        let num = (0..n)
            .map(|k| {
                let a = self.num.get(k).unwrap_or(&zero) * &fa;
                let b = o.num.get(k).unwrap_or(&zero) * &fb;
                if sign > 0 {
                    a + b
                } else {
                    a - b
                }
            })
            .collect();
        QSeries {
            num,
            den: &self.den * fa,
        }
        .normalized()
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        self.combine(o, -1)
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        let mut num: Vec<BigInt> = self.num.iter().map(|n| n * c.numer()).collect();
        let mut den = &self.den * c.denom();
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|n| *n = -n.clone());
        }
        QSeries { num, den }.normalized()
    }

    /// `s · self`.
    pub fn shift_one(&self) -> QSeries {
        let mut num = Vec::with_capacity(self.len() + 1);
        num.push(BigInt::zero());
        num.extend(self.num.iter().cloned());
        QSeries {
            num,
            den: self.den.clone(),
        }
    }

    /// Formal derivative in `s`.
    pub fn derivative(&self) -> QSeries {
        let num = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        QSeries {
            num,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// `1/self` to `n` terms by Newton iteration `X ← X(2 − AX)`.
    pub fn inverse(&self, n: usize) -> Result<QSeries> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let two = QSeries::constant(BigRational::from_integer(2.into()), 1);
        let mut x = QSeries::constant(a0.recip(), 1);
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let ax = self.mul_trunc(&x, prec);
            x = x.mul_trunc(&two.sub(&ax), prec);
        }
        Ok(x.pad(n).truncate(n))
    }

    /// `self(q)` to `n` terms, where `q` has zero constant term.
    pub fn compose(&self, q: &QSeries, n: usize) -> Result<QSeries> {
        if !q.coeff(0).is_zero() {
            return Err(Error::InvalidInput("inner series must vanish at 0".into()));
        }
        let d = self.len().min(n);
        if d == 0 {
            return Ok(QSeries {
                num: vec![BigInt::zero(); n],
                den: BigInt::one(),
            });
        }
        let mut acc = QSeries::constant(self.coeff(d - 1), 1);
        for j in (0..d - 1).rev() {
            // Later multiplications by q shift by at least j more places.
            let keep = n - j;
            acc = acc
                .mul_trunc(q, keep)
                .add(&QSeries::constant(self.coeff(j), 1))
                .truncate(keep);
        }
        Ok(acc.pad(n).truncate(n))
    }

    /// `self^e` to `n` terms by repeated squaring.
    pub fn pow_trunc(&self, mut e: u64, n: usize) -> QSeries {
        let mut base = self.clone().truncate(n);
        let mut acc = QSeries::constant(BigRational::one(), 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, n);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, n);
            }
        }
        acc.pad(n).truncate(n)
    }
}
