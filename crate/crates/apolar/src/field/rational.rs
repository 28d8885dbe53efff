//! Arbitrary-precision rationals, wrapped so the rest of the crate sees one
//! coefficient interface.  Always stored reduced with positive denominator
//! (the backing type maintains that canonical form).

use crate::error::{Error, Result};
use crate::field::Scalar;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn from_pair(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational out of f64 range")
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn one() -> Self {
        Rat(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rat(-&self.0)
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn embed(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    fn from_complex(_: Complex64) -> Option<Self> {
        None
    }

    fn display_parts(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_canonical_form() {
        let r = Rat::from_pair(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r, Rat::from_pair(-3, 2));
    }

    #[test]
    fn field_ops() {
        let a = Rat::from_pair(1, 3);
        let b = Rat::from_pair(1, 6);
        assert_eq!(a.add(&b), Rat::from_pair(1, 2));
        assert_eq!(a.mul(&a.inv().unwrap()), Rat::one());
        assert!(Rat::zero().inv().is_err());
    }

    #[test]
    fn integer_display_has_no_denominator() {
        assert_eq!(Rat::from_pair(4, 2).to_string(), "2");
    }
}
