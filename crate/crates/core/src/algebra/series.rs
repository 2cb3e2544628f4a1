//! Polynomials in `t` over [`Scalar`] and truncated power-series expansion of
//! rational functions at `t = 0`.

use std::ops::{Add, Mul};

use super::intpoly::IntPolynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ScalarPoly {
    coeffs: Vec<Scalar>,
}

impl ScalarPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        ScalarPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn one() -> Self {
        ScalarPoly::new(vec![Scalar::one()])
    }

    /// `1 - c t`.
    pub fn one_minus(c: Scalar) -> Self {
        ScalarPoly::new(vec![Scalar::one(), -c])
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[0] = Scalar::one();
        v[k] = &v[k] - &Scalar::one();
        ScalarPoly::new(v)
    }

    /// `1 + t^k`.
    pub fn one_plus_t_pow(k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[0] = Scalar::one();
        v[k] = &v[k] + &Scalar::one();
        ScalarPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ScalarPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product truncated to degree `up_to`.
    pub fn mul_truncated(&self, rhs: &ScalarPoly, up_to: usize) -> ScalarPoly {
        let mut out = vec![Scalar::zero(); up_to + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(up_to + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(up_to + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        ScalarPoly::new(out)
    }

    /// The integer polynomial with the same coefficients, if all are integers.
    pub fn to_int_poly(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(Scalar::as_integer)
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

impl From<&IntPolynomial> for ScalarPoly {
    fn from(p: &IntPolynomial) -> Self {
        ScalarPoly::new(p.coeffs().iter().cloned().map(Scalar::from_bigint).collect())
    }
}

impl Add<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ScalarPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Mul<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        match (self.degree(), rhs.degree()) {
            (Some(a), Some(b)) => self.mul_truncated(rhs, a + b),
            _ => ScalarPoly::default(),
        }
    }
}

/// `numerator / denominator` with a denominator that is invertible at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: ScalarPoly,
    denominator: ScalarPoly,
}

impl RationalFunction {
    pub fn new(numerator: ScalarPoly, denominator: ScalarPoly) -> Result<Self> {
        if denominator.coeff(0).is_zero() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        Ok(RationalFunction { numerator, denominator })
    }

    pub fn numerator(&self) -> &ScalarPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &ScalarPoly {
        &self.denominator
    }
}

/// Coefficients of `f` as a power series at 0, through degree `up_to`.
pub fn series_expand(f: &RationalFunction, up_to: usize) -> Result<Vec<Scalar>> {
    let den = f.denominator.coeffs();
    let c0 = den.first().filter(|c| !c.is_zero()).ok_or(Error::NonInvertibleConstantTerm)?;
    let c0_inv = c0.inv();
    let mut out: Vec<Scalar> = Vec::with_capacity(up_to + 1);
    for k in 0..=up_to {
        // den * out = num  =>  out_k = (num_k - sum_{i>=1} den_i out_{k-i}) / den_0
        let mut acc = f.numerator.coeff(k);
        for (i, d) in den.iter().enumerate().skip(1).take(k) {
            if !d.is_zero() && !out[k - i].is_zero() {
                acc -= &(d * &out[k - i]);
            }
        }
        out.push(&acc * &c0_inv);
    }
    Ok(out)
}
