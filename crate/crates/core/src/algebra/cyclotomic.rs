//! Residues modulo the n-th cyclotomic polynomial, i.e. elements of Q(zeta_n)
//! in the power basis `1, zeta, ..., zeta^{phi(n)-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num::{BigInt, BigRational, One, Zero};

use super::intpoly::IntPolynomial;

static MODULI: LazyLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Coefficients of the n-th cyclotomic polynomial, cached process-wide.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = MODULI.read().unwrap().get(&n) {
        return p.clone();
    }
    // Phi_n = prod_{d | n} (t^d - 1)^{mu(n/d)}
    let n = n as usize;
    let mut coeffs = vec![BigInt::one()];
    let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let mut next = vec![BigInt::zero(); coeffs.len() + d];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            coeffs = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // q (t^d - 1) = p  =>  q_i = q_{i-d} - p_i, lowest first
            let len = coeffs.len() - d;
            let mut q: Vec<BigInt> = Vec::with_capacity(len);
            for i in 0..len {
                let prev = if i >= d { q[i - d].clone() } else { BigInt::zero() };
                q.push(prev - &coeffs[i]);
            }
            coeffs = q;
        }
    }
    let p = IntPolynomial::new(coeffs);
    let n = n as u32;
    let coeffs = Arc::new(p.coeffs().to_vec());
    MODULI.write().unwrap().insert(n, coeffs.clone());
    coeffs
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Euler's totient, the degree of Q(zeta_n).
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|&k| num::integer::gcd(k, n) == 1).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloResidue {
    order: u32,
    coords: Vec<BigRational>,
}

impl CycloResidue {
    /// Reduces an arbitrary-length coefficient vector modulo Phi_n.
    pub fn from_poly(order: u32, mut coeffs: Vec<BigRational>) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let deg = modulus.len() - 1;
        // modulus is monic
        while coeffs.len() > deg {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - deg;
            for (i, m) in modulus[..deg].iter().enumerate() {
                coeffs[shift + i] -= &top * BigRational::from_integer(m.clone());
            }
        }
        coeffs.resize(deg, BigRational::zero());
        CycloResidue { order, coords: coeffs }
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self::from_poly(order, coeffs)
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        Self::from_poly(order, vec![q])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value, if the residue lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords.iter().skip(1).all(Zero::is_zero) {
            Some(self.coords.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.order, o.order, "mixing cyclotomic residues of different orders");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        CycloResidue { order: self.order, coords }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        CycloResidue { order: self.order, coords }
    }

    pub fn neg(&self) -> Self {
        CycloResidue { order: self.order, coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coords.len();
        let mut prod = vec![BigRational::zero(); 2 * n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.order, prod)
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.order as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coords.iter().enumerate() {
            coeffs[(n - i % n) % n] += c;
        }
        Self::from_poly(self.order, coeffs)
    }

    /// Inverse via the extended Euclidean algorithm in Q[x]. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(zeta_{})", self.order);
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // invariant: s * self == r0 (mod Phi_n)
        let (mut r0, mut r1) = (trim(self.coords.clone()), trim(modulus));
        let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
        while !r1.is_empty() {
            let (q, r) = rat_divrem(&r0, &r1);
            let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Phi_n is irreducible
        assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        Self::from_poly(self.order, s0.into_iter().map(|s| s / &c).collect())
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] / lead;
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= &c * y;
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

impl fmt::Display for CycloResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ{}", self.order)?,
                _ => write!(f, "({c})ζ{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n| {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        for n in 3..=12 {
            let z = CycloResidue::root_of_unity(n, 1);
            let one = CycloResidue::from_rational(n, BigRational::one());
            let a = one.sub(&z);
            let prod = a.mul(&a.inv());
            assert_eq!(prod.as_rational(), Some(BigRational::one()));
        }
    }
}
