use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Scalar;

pub type Exponent = Vec<u32>;

/// A polynomial in `nvars` commuting variables with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

fn add_into<K: Ord>(terms: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get_mut();
            *v += &c;
            if v.is_zero() {
                e.remove();
            }
        }
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::monomial(vec![0; nvars], Scalar::one())
    }

    pub fn monomial(exp: Exponent, c: Scalar) -> Self {
        let mut p = Polynomial::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial::monomial(e, Scalar::one())
    }

    /// `sum_i c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, c: Scalar) {
        assert_eq!(exp.len(), self.nvars, "exponent length");
        add_into(&mut self.terms, exp, c);
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Polynomial::one(self.nvars), |acc, _| &acc * self)
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&p, _)| p > 0)
                .map(|(&p, v)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
                .collect();
            let mono = mono.join("*");
            let text = c.to_string();
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, text),
            };
            let simple = !abs.contains(['+', '-', ' ']);
            let coef = if mono.is_empty() {
                if simple { abs } else { format!("({abs})") }
            } else if abs == "1" {
                String::new()
            } else if simple {
                format!("{abs}*")
            } else {
                format!("({abs})*")
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&coef);
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// A differential operator with polynomial coefficients, stored in normal
/// order as `sum c x^alpha d^beta`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeylOperator {
    nvars: usize,
    terms: BTreeMap<(Exponent, Exponent), Scalar>,
}

impl WeylOperator {
    pub fn zero(nvars: usize) -> Self {
        WeylOperator { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(x: Exponent, d: Exponent, c: Scalar) -> Self {
        assert_eq!(x.len(), d.len(), "exponent length");
        let mut op = WeylOperator::zero(x.len());
        op.add_term(x, d, c);
        op
    }

    /// `sum_i x_i d_i`.
    pub fn euler(nvars: usize) -> Self {
        let mut op = WeylOperator::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = 1;
            op.add_term(e.clone(), e, Scalar::one());
        }
        op
    }

    /// `P(x)` times `Q(d)`: both factors commute among themselves, so the
    /// product is already in normal order.
    pub fn from_parts(x: &Polynomial, d: &Polynomial) -> Self {
        assert_eq!(x.nvars, d.nvars, "variable count");
        let mut op = WeylOperator::zero(x.nvars);
        for (a, c1) in &x.terms {
            for (b, c2) in &d.terms {
                op.add_term(a.clone(), b.clone(), c1 * c2);
            }
        }
        op
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<(Exponent, Exponent), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, x: Exponent, d: Exponent, c: Scalar) {
        assert!(x.len() == self.nvars && d.len() == self.nvars, "exponent length");
        add_into(&mut self.terms, (x, d), c);
    }

    /// `max (|alpha| - |beta|)` over the support; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|(a, b)| a.iter().sum::<u32>() as i64 - b.iter().sum::<u32>() as i64)
            .max()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = WeylOperator::zero(self.nvars);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    pub fn display_with(&self, x_names: &[&str], d_names: &[&str]) -> String {
        let names: Vec<&str> = x_names.iter().chain(d_names).copied().collect();
        let mut p = Polynomial::zero(2 * self.nvars);
        for ((a, b), c) in &self.terms {
            p.add_term(a.iter().chain(b).copied().collect(), c.clone());
        }
        p.display_with(&names)
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let d: Vec<String> = (1..=self.nvars).map(|i| format!("d{i}")).collect();
        let x: Vec<&str> = x.iter().map(String::as_str).collect();
        let d: Vec<&str> = d.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&x, &d))
    }
}

impl Add<&WeylOperator> for &WeylOperator {
    type Output = WeylOperator;
    fn add(self, rhs: &WeylOperator) -> WeylOperator {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl Sub<&WeylOperator> for &WeylOperator {
    type Output = WeylOperator;
    fn sub(self, rhs: &WeylOperator) -> WeylOperator {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), -c);
        }
        out
    }
}
