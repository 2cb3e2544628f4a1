//! Dense univariate polynomials in `t` with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored in ascending order; the vector never ends in a
//! zero, so the zero polynomial is the empty vector and has no degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    /// `t^k - 1`.
    pub fn t_pow_minus_one(k: usize) -> Self {
        Self::t_pow(k) - Self::one()
    }

    /// `t^a - t^b`.
    pub fn binomial(a: usize, b: usize) -> Self {
        Self::t_pow(a) - Self::t_pow(b)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Divides by `t^k`, failing if `t^k` does not divide `self`.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Returns `q` with `self = q * divisor`, or `NotDivisible`.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let db = divisor.degree().ok_or(Error::NotDivisible)?;
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < db {
            return Err(Error::NotDivisible);
        }
        let lead = &divisor.coeffs[db];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::new(quot))
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num::ToPrimitive;
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

/// `(t^{i_1} - 1)(t^{i_2} - 1)...`; the empty product is `1`.
pub fn gaussian_product(indices: &[usize]) -> IntPolynomial {
    indices
        .iter()
        .fold(IntPolynomial::one(), |acc, &i| acc * IntPolynomial::t_pow_minus_one(i))
}

/// `a / b` with the remainder required to vanish.
pub fn poly_exact_div(a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial> {
    a.exact_div(b)
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |a, b| a + b)
    }
}

pub(crate) fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Human-readable form, lowest degree first: `t³ + t⁵ + t⁷`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t{}", superscript(k)),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn exact_division_examples() {
        // (t^4 - 1) / (t^2 - 1) = t^2 + 1
        assert_eq!(
            poly_exact_div(&p(&[-1, 0, 0, 0, 1]), &p(&[-1, 0, 1])).unwrap(),
            p(&[1, 0, 1])
        );
        let a = gaussian_product(&[8]) * gaussian_product(&[4]);
        assert_eq!(poly_exact_div(&a, &gaussian_product(&[4])).unwrap(), gaussian_product(&[8]));
        // (t^3 - t) / (t - 1) = t^2 + t
        assert_eq!(poly_exact_div(&p(&[0, -1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[0, 1, 1]));
    }

    #[test]
    fn exact_division_rejects_remainder() {
        assert_eq!(poly_exact_div(&p(&[1, 0, 1]), &p(&[-1, 1])), Err(Error::NotDivisible));
        assert_eq!(poly_exact_div(&p(&[1, 1]), &p(&[0, 2])), Err(Error::NotDivisible));
        assert_eq!(poly_exact_div(&p(&[1]), &IntPolynomial::zero()), Err(Error::NotDivisible));
    }

    #[test]
    fn gaussian_products() {
        assert_eq!(gaussian_product(&[]), IntPolynomial::one());
        assert_eq!(gaussian_product(&[1, 2]), p(&[1, -1, -1, 1]));
        assert_eq!(gaussian_product(&[2, 4]), p(&[1, 0, -1, 0, -1, 0, 1]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[0, 3, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0, 1, 2]).valuation(), Some(2));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 0, 0, 1, 0, 1, 0, 1]).to_string(), "t³ + t⁵ + t⁷");
        assert_eq!(p(&[1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3]).to_string(), "1 - 2t + 3t¹¹");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn product_divides_back(a in prop::collection::vec(-20i64..20, 0..6),
                                b in prop::collection::vec(-20i64..20, 1..6)) {
            let a = p(&a);
            let b = p(&b);
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }
    }
}
