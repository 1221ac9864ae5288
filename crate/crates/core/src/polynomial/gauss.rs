use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `re + i*im` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational::new(
            BigRational::from(BigInt::from(re)),
            BigRational::from(BigInt::from(im)),
        )
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|z|` when one part vanishes, which is all the determinant needs.
    pub fn axis_abs(&self) -> Option<BigRational> {
        if self.im.is_zero() {
            Some(self.re.abs())
        } else if self.re.is_zero() {
            Some(self.im.abs())
        } else {
            None
        }
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, r: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &r.re, &self.im + &r.im)
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, r: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &r.re, &self.im - &r.im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, r: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &r.re - &self.im * &r.im,
            &self.re * &r.im + &self.im * &r.re,
        )
    }
}

impl Div for &GaussRational {
    type Output = GaussRational;
    /// Panics on division by zero.
    fn div(self, r: &GaussRational) -> GaussRational {
        let n = r.norm();
        assert!(!n.is_zero(), "division by zero");
        let num = self * &r.conj();
        GaussRational::new(num.re / &n, num.im / n)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            _ => write!(f, "{} + {}i", self.re, self.im),
        }
    }
}
