//! Rational functions `N/D` over exact rationals, kept in lowest terms with a
//! monic denominator.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduces by the polynomial gcd and makes the denominator monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        } else {
            (num, den)
        };
        Ok(Self::normalize_monic(num, den))
    }

    /// Builds `num/den` when the caller guarantees they share no root; only the
    /// denominator is made monic.
    pub fn from_coprime(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::normalize_monic(num, den))
    }

    fn normalize_monic(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Re-reduces; a no-op on values built by [`RationalFunction::new`].
    pub fn reduce(&self) -> Result<Self> {
        Self::new(self.num.clone(), self.den.clone())
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Domain(format!("pole at {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn add(&self, o: &RationalFunction) -> Result<Self> {
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn sub(&self, o: &RationalFunction) -> Result<Self> {
        Self::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul(&self, o: &RationalFunction) -> Result<Self> {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    /// `(N′D − ND′)/D²`.
    pub fn derivative(&self) -> Result<Self> {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Equality as functions (cross-multiplication).
    pub fn same_function(&self, o: &RationalFunction) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::{int, rat};
    use super::*;

    #[test]
    fn reduction_is_idempotent() {
        let num = Poly::from_roots(&[int(1), int(2)]);
        let den = Poly::from_roots(&[int(1), int(3)]).scale(&int(5));
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.denominator(), &Poly::from_roots(&[int(3)]));
        assert_eq!(
            r.numerator(),
            &Poly::from_roots(&[int(2)]).scale(&rat(1, 5))
        );
        assert_eq!(r.reduce().unwrap(), r);
    }

    #[test]
    fn derivative_of_inverse() {
        // d/dx 1/x = −1/x².
        let r = RationalFunction::new(Poly::one(), Poly::x()).unwrap();
        let d = r.derivative().unwrap();
        assert!(d.same_function(
            &RationalFunction::new(Poly::from_i64(&[-1]), Poly::from_i64(&[0, 0, 1])).unwrap()
        ));
        assert_eq!(d.eval(&int(2)).unwrap(), rat(-1, 4));
        assert!(r.eval(&int(0)).is_err());
    }
}
