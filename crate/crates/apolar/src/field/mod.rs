//! Coefficient fields: exact rationals, the cyclotomic field `Q(z)` with
//! `z = exp(i*pi/6)`, and double-precision complex numbers for the numeric bridge.

mod cyclotomic;
mod rational;

pub use cyclotomic::CycElem;
pub use rational::Rat;

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;

/// A field element usable as a polynomial coefficient.
///
/// All operations are pure.  `embed` maps into `C` (exactly for [`ComplexF`],
/// up to float rounding for the exact fields) and is a ring homomorphism.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True for fields with decidable exact equality (kernels use elimination);
    /// false routes kernel computations through SVD thresholding.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `Err(DivisionByZero)` on zero.
    fn inv(&self) -> Result<Self>;
    fn from_int(n: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// Numeric value at the fixed complex embedding.
    fn embed(&self) -> Complex64;
    /// Lift a numeric value back into the field; `None` for exact fields.
    fn from_complex(c: Complex64) -> Option<Self>;
    /// Splits the display into a sign and an unsigned body, so polynomial
    /// printers can emit `a - b` instead of `a + -b`.  Multi-term scalars
    /// return `(false, "(..)")` with parentheses already applied.
    fn display_parts(&self) -> (bool, String);
    /// True when `display_parts` returned a bare body that still needs
    /// parentheses in a product context (never true in this crate's fields,
    /// kept for clarity at call sites).
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Complex double with finite components.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ComplexF(pub Complex64);

impl ComplexF {
    pub fn new(re: f64, im: f64) -> Self {
        assert!(re.is_finite() && im.is_finite(), "non-finite complex component");
        ComplexF(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

impl fmt::Display for ComplexF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.0.re, self.0.im);
        if im == 0.0 {
            write!(f, "{re}")
        } else if re == 0.0 {
            if im == 1.0 {
                write!(f, "i")
            } else if im == -1.0 {
                write!(f, "-i")
            } else {
                write!(f, "{im}i")
            }
        } else if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl Scalar for ComplexF {
    const EXACT: bool = false;

    fn zero() -> Self {
        ComplexF(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        ComplexF(Complex64::new(1.0, 0.0))
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn add(&self, rhs: &Self) -> Self {
        ComplexF(self.0 + rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        ComplexF(self.0 - rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        ComplexF(self.0 * rhs.0)
    }

    fn neg(&self) -> Self {
        ComplexF(-self.0)
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ComplexF(self.0.inv()))
    }

    fn from_int(n: i64) -> Self {
        ComplexF(Complex64::new(n as f64, 0.0))
    }

    fn from_rat(r: &Rat) -> Self {
        ComplexF(Complex64::new(r.to_f64(), 0.0))
    }

    fn embed(&self) -> Complex64 {
        self.0
    }

    fn from_complex(c: Complex64) -> Option<Self> {
        Some(ComplexF(c))
    }

    fn display_parts(&self) -> (bool, String) {
        let (re, im) = (self.0.re, self.0.im);
        if im == 0.0 {
            if re < 0.0 {
                (true, format!("{}", -re))
            } else {
                (false, format!("{re}"))
            }
        } else if re == 0.0 {
            let body = if im.abs() == 1.0 { "i".to_string() } else { format!("{}i", im.abs()) };
            (im < 0.0, body)
        } else {
            (false, format!("({self})"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_display_forms() {
        assert_eq!(ComplexF::new(1.5, 0.0).to_string(), "1.5");
        assert_eq!(ComplexF::new(0.0, 1.0).to_string(), "i");
        assert_eq!(ComplexF::new(0.0, -2.0).to_string(), "-2i");
        assert_eq!(ComplexF::new(0.5, -0.25).to_string(), "0.5-0.25i");
    }

    #[test]
    #[should_panic]
    fn non_finite_rejected() {
        ComplexF::new(f64::NAN, 0.0);
    }
}
