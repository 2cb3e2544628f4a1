//! The exact scalar tower: rationals, Q(sqrt 5) and cyclotomic residues.
//!
//! Values are kept in canonical form: anything that happens to be rational
//! is stored as [`Scalar::Rational`], so structural equality and hashing
//! agree with numeric equality. Binary operations promote a rational operand
//! into the other operand's field. Mixing Q(sqrt 5) with a cyclotomic
//! residue, or residues of different orders, is a programming error and
//! panics.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

use super::cyclotomic::CycloResidue;
use super::quadratic::QuadSqrt5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Sqrt5(QuadSqrt5),
    Cyclotomic(CycloResidue),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn sqrt5() -> Self {
        Scalar::Sqrt5(QuadSqrt5::sqrt5())
    }

    pub fn golden_ratio() -> Self {
        Scalar::Sqrt5(QuadSqrt5::golden_ratio())
    }

    /// `a + b sqrt 5`.
    pub fn quadratic(a: BigRational, b: BigRational) -> Self {
        Scalar::Sqrt5(QuadSqrt5::new(a, b)).canonical()
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        Scalar::Cyclotomic(CycloResidue::root_of_unity(n, k)).canonical()
    }

    fn canonical(self) -> Self {
        match self {
            Scalar::Sqrt5(q) if q.irr.is_zero() => Scalar::Rational(q.rat),
            Scalar::Cyclotomic(c) => match c.as_rational() {
                Some(r) => Scalar::Rational(r),
                None => Scalar::Cyclotomic(c),
            },
            s => s,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Complex conjugation. Q(sqrt 5) is real, so only residues change.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.conjugate()).canonical(),
            s => s.clone(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Rational(r.recip())
            }
            Scalar::Sqrt5(q) => Scalar::Sqrt5(q.inv()).canonical(),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.inv()).canonical(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn binop(
        &self,
        rhs: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        quad: impl Fn(&QuadSqrt5, &QuadSqrt5) -> QuadSqrt5,
        cyc: impl Fn(&CycloResidue, &CycloResidue) -> CycloResidue,
    ) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(rat(a, b)),
            (Sqrt5(a), Sqrt5(b)) => Sqrt5(quad(a, b)).canonical(),
            (Cyclotomic(a), Cyclotomic(b)) => Cyclotomic(cyc(a, b)).canonical(),
            (Rational(a), Sqrt5(b)) => {
                Sqrt5(quad(&QuadSqrt5::new(a.clone(), BigRational::zero()), b)).canonical()
            }
            (Sqrt5(a), Rational(b)) => {
                Sqrt5(quad(a, &QuadSqrt5::new(b.clone(), BigRational::zero()))).canonical()
            }
            (Rational(a), Cyclotomic(b)) => {
                Cyclotomic(cyc(&CycloResidue::from_rational(b.order(), a.clone()), b)).canonical()
            }
            (Cyclotomic(a), Rational(b)) => {
                Cyclotomic(cyc(a, &CycloResidue::from_rational(a.order(), b.clone()))).canonical()
            }
            (a, b) => panic!("incompatible scalar fields: {a} and {b}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, QuadSqrt5::add, CycloResidue::add)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, QuadSqrt5::sub, CycloResidue::sub)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        self.binop(rhs, |a, b| a * b, QuadSqrt5::mul, CycloResidue::mul)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) {
            assert!(!b.is_zero(), "division by zero");
            return Scalar::Rational(a / b);
        }
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Sqrt5(q) => Scalar::Sqrt5(q.neg()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_negative() => write!(f, "-{}", r.abs()),
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Sqrt5(q) => write!(f, "{q}"),
            Scalar::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn roots_of_unity_close_up() {
        for n in 1..=24u32 {
            let z = Scalar::root_of_unity(n, 1);
            assert!(z.pow(n).is_one(), "zeta_{n}^{n} != 1");
            let total: Scalar = (0..n as i64).map(|k| Scalar::root_of_unity(n, k)).sum();
            if n == 1 {
                assert!(total.is_one());
            } else {
                assert!(total.is_zero(), "sum of {n}-th roots is {total}");
            }
        }
    }

    #[test]
    fn conjugation_of_roots() {
        let z = Scalar::root_of_unity(7, 2);
        assert_eq!(z.conj(), Scalar::root_of_unity(7, -2));
        assert!((&z * &z.conj()).is_one());
        // 2cos(2 pi/5) = phi - 1
        let w = &Scalar::root_of_unity(5, 1) + &Scalar::root_of_unity(5, -1);
        assert_eq!(w.conj(), w);
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = Scalar::sqrt5();
        assert_eq!(&s * &s, Scalar::from_int(5));
        let phi = Scalar::golden_ratio();
        // phi^2 = phi + 1
        assert_eq!(&phi * &phi, &phi + &Scalar::one());
        assert_eq!(&phi * &phi.inv(), Scalar::one());
    }

    #[test]
    fn canonical_demotion() {
        let phi = Scalar::golden_ratio();
        let diff = &phi - &phi;
        assert_eq!(diff, Scalar::zero());
        assert!(matches!(diff, Scalar::Rational(_)));
        let z = Scalar::root_of_unity(6, 1);
        assert_eq!(&z + &z.conj(), Scalar::one());
    }

    fn quad() -> impl Strategy<Value = QuadSqrt5> {
        (-30i64..30, 1i64..8, -30i64..30, 1i64..8).prop_map(|(a, b, c, d)| {
            QuadSqrt5::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        })
    }

    proptest! {
        #[test]
        fn quadratic_conjugation_is_ring_map(a in quad(), b in quad()) {
            prop_assert_eq!(a.add(&b).conjugate(), a.conjugate().add(&b.conjugate()));
            prop_assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
            prop_assert_eq!(a.conjugate().conjugate(), a);
        }

        #[test]
        fn field_ops_are_exact(a in quad(), b in quad()) {
            let (a, b) = (Scalar::Sqrt5(a).canonical(), Scalar::Sqrt5(b).canonical());
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }

        #[test]
        fn cyclotomic_ops_are_exact(n in 3u32..16, xs in prop::collection::vec(-5i64..5, 4),
                                    ys in prop::collection::vec(-5i64..5, 4)) {
            let mk = |v: &[i64]| v.iter().enumerate()
                .map(|(k, &c)| &Scalar::from_int(c) * &Scalar::root_of_unity(n, k as i64))
                .sum::<Scalar>();
            let (a, b) = (mk(&xs), mk(&ys));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }
}
