use std::fmt;

use super::{Elem, Field};
use crate::error::{Error, Result};

/// A univariate polynomial, low degree first, with no trailing zeros.
///
/// Like [`Elem`], a `Poly` does not carry its field; operations take it.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.0).collect::<Vec<_>>())
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly {
            coeffs: vec![Elem::ONE],
        }
    }

    /// `c x^deg`.
    pub fn monomial(c: Elem, deg: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    /// `x - a`.
    pub fn linear(a: Elem, f: &Field) -> Poly {
        Poly::new(vec![f.neg(a), Elem::ONE])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize, f: &Field) -> Poly {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[0] = f.neg(Elem::ONE);
        coeffs[n] = f.add(coeffs[n], Elem::ONE);
        Poly::new(coeffs)
    }

    /// Builds from small integers reduced into the prime subfield.
    pub fn from_ints(ints: &[i64], f: &Field) -> Poly {
        Poly::new(ints.iter().map(|&v| f.from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for d in (dd..rem.len()).rev() {
            let c = f.mul(rem[d], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[d - dd] = c;
            for (k, &b) in divisor.coeffs.iter().enumerate() {
                let t = d - dd + k;
                rem[t] = f.sub(rem[t], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self, f: &Field) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(f.inv(lead)?, f))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b, f).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(f).expect("nonzero")
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Applies `map` to every coefficient, e.g. to move between fields.
    pub fn try_map(&self, mut map: impl FnMut(Elem) -> Option<Elem>) -> Option<Poly> {
        let coeffs = self.coeffs.iter().map(|&c| map(c)).collect::<Option<Vec<_>>>()?;
        Some(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factor_of_x7_minus_1_over_gf5() {
        let f = Field::new(5, 1).unwrap();
        let a = Poly::from_ints(&[-1, 1], &f);
        let b = Poly::from_ints(&[1, 1, 1, 1, 1, 1, 1], &f);
        assert_eq!(a.mul(&b, &f), Poly::x_pow_minus_one(7, &f));
    }

    #[test]
    fn gcd_and_eval() {
        let f = Field::new(5, 1).unwrap();
        let a = Poly::from_ints(&[-1, 0, 1], &f);
        let b = Poly::from_ints(&[-1, 1], &f);
        assert_eq!(a.gcd(&b, &f), b);
        let g2 = Field::new(2, 1).unwrap();
        assert_eq!(Poly::from_ints(&[1, 1, 0, 1], &g2).eval(Elem::ZERO, &g2), Elem::ONE);
    }

    #[test]
    fn division_by_zero_polynomial() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(Poly::one().divmod(&Poly::zero(), &f), Err(Error::DivisionByZero));
    }

    proptest! {
        #[test]
        fn divmod_round_trip(a in prop::collection::vec(0u32..9, 0..12), b in prop::collection::vec(0u32..9, 1..6)) {
            let f = Field::new(3, 2).unwrap();
            let a = Poly::new(a.into_iter().map(Elem).collect());
            let b = Poly::new(b.into_iter().map(Elem).collect());
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b, &f).unwrap();
            prop_assert_eq!(q.mul(&b, &f).add(&r, &f), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
