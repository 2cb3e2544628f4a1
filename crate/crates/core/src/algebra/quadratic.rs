//! The real quadratic field Q(sqrt 5), home of the golden ratio.

use std::fmt;

use num::{BigRational, One, Signed, Zero};

/// `rat + irr * sqrt(5)` with both parts rational in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSqrt5 {
    pub rat: BigRational,
    pub irr: BigRational,
}

impl QuadSqrt5 {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        QuadSqrt5 { rat, irr }
    }

    pub fn sqrt5() -> Self {
        QuadSqrt5::new(BigRational::zero(), BigRational::one())
    }

    /// `(1 + sqrt 5) / 2`.
    pub fn golden_ratio() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QuadSqrt5::new(half.clone(), half)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    /// The Galois conjugation `sqrt 5 -> -sqrt 5`.
    pub fn conjugate(&self) -> Self {
        QuadSqrt5::new(self.rat.clone(), -&self.irr)
    }

    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(5.into()) * &self.irr * &self.irr
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadSqrt5::new(&self.rat + &o.rat, &self.irr + &o.irr)
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadSqrt5::new(&self.rat - &o.rat, &self.irr - &o.irr)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let five = BigRational::from_integer(5.into());
        QuadSqrt5::new(
            &self.rat * &o.rat + five * &self.irr * &o.irr,
            &self.rat * &o.irr + &self.irr * &o.rat,
        )
    }

    pub fn neg(&self) -> Self {
        QuadSqrt5::new(-&self.rat, -&self.irr)
    }

    /// Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in Q(sqrt 5)");
        let c = self.conjugate();
        QuadSqrt5::new(c.rat / &n, c.irr / n)
    }
}

impl fmt::Display for QuadSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let sign = if self.irr.is_negative() { "-" } else { "+" };
        if self.rat.is_zero() {
            write!(f, "{}{}√5", if self.irr.is_negative() { "-" } else { "" }, self.irr.abs())
        } else {
            write!(f, "{} {} {}√5", self.rat, sign, self.irr.abs())
        }
    }
}
