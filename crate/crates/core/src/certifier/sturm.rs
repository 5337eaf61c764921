//! Sturm-sequence root counting over exact integers.

use num_rational::BigRational;

use super::poly::{IntPoly, Poly};
use crate::error::{Error, Result};

/// Primitive Sturm chain of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// `p₀ = p`, `p₁ = p′`, `p_{i+1} = −rem(p_{i−1}, pᵢ)`, each member
    /// divided by its positive content after the remainder step.
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.to_primitive_int();
        let p1 = p0.derivative().primitive();
        let mut chain = vec![p0];
        if !p1.is_zero() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive());
        }
        Ok(SturmChain { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Largest coefficient bit length along the chain.
    pub fn max_bits(&self) -> u64 {
        self.chain.iter().map(|p| p.max_bits()).max().unwrap_or(0)
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0;
        let mut v = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }
}

/// Root count together with the multiplicities of exact endpoint roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCountDetail {
    /// Distinct real roots in the closed interval `[a, b]`.
    pub closed: usize,
    /// Distinct real roots in the open interval `(a, b)`.
    pub open: usize,
    /// Multiplicity of `a` as a root.
    pub at_a: usize,
    /// Multiplicity of `b` as a root.
    pub at_b: usize,
}

/// Distinct real roots of `p` in `(a, b]`.
///
/// Endpoint roots are divided out exactly before the chain is built, so the
/// chain is never evaluated at one of its own roots.
pub fn sturm_count(p: &Poly, a: &BigRational, b: &BigRational) -> Result<usize> {
    let d = sturm_count_detail(p, a, b)?;
    Ok(d.open + usize::from(d.at_b > 0))
}

/// Open, closed and endpoint root information for `p` on `[a, b]`.
pub fn sturm_count_detail(p: &Poly, a: &BigRational, b: &BigRational) -> Result<RootCountDetail> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Err(Error::InvalidInput(format!("empty interval ({a}, {b})")));
    }
    let (at_a, q) = p.deflate_root(a);
    let (at_b, q) = q.deflate_root(b);
    let chain = SturmChain::new(&q)?;
    let open = chain.variations(a) - chain.variations(b);
    let closed = open + usize::from(at_a > 0) + usize::from(at_b > 0);
    Ok(RootCountDetail {
        closed,
        open,
        at_a,
        at_b,
    })
}

#[cfg(test)]
mod tests {
    use super::super::poly::{int, rat};
    use super::*;

    #[test]
    fn textbook_examples() {
        assert_eq!(
            sturm_count(&Poly::from_i64(&[-2, 0, 1]), &int(1), &int(2)).unwrap(),
            1
        );
        assert_eq!(
            sturm_count(&Poly::from_i64(&[0, -1, 0, 1]), &int(-2), &int(2)).unwrap(),
            3
        );
        assert_eq!(
            sturm_count(&Poly::from_i64(&[1, 0, 1]), &int(-10), &int(10)).unwrap(),
            0
        );
        assert!(matches!(
            sturm_count(&Poly::zero(), &int(0), &int(1)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn endpoint_roots_are_handled_exactly() {
        // (x − 1)²(x − 2)(x − 3): roots 1 (double), 2, 3.
        let p = Poly::from_roots(&[int(1), int(1), int(2), int(3)]);
        let d = sturm_count_detail(&p, &int(1), &int(3)).unwrap();
        assert_eq!(
            d,
            RootCountDetail {
                closed: 3,
                open: 1,
                at_a: 2,
                at_b: 1
            }
        );
        assert_eq!(sturm_count(&p, &int(1), &int(3)).unwrap(), 2);
        assert_eq!(sturm_count(&p, &rat(1, 2), &rat(5, 2)).unwrap(), 2);
    }

    #[test]
    fn repeated_roots_count_once() {
        let p = Poly::from_roots(&[rat(1, 3), rat(1, 3), rat(1, 3), int(5)]);
        assert_eq!(sturm_count(&p, &int(0), &int(10)).unwrap(), 2);
    }
}
