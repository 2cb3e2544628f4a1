//! Finite Coxeter group descriptors, conjugacy-class data, reflection
//! representations and brute-force element enumeration.
//!
//! Matrices describe the action on the coordinate functions: column `i` of
//! `M(g)` holds the coefficients of `g . x_i`. For A, B and D the integral
//! realizations (permutations modulo the trivial line, signed permutations)
//! stand in for the cosine form; the dihedral groups act on the complex
//! coordinates `z, zbar` with cyclotomic entries; H3 uses the cosine form
//! over Q(sqrt 5).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix, Scalar, ScalarPoly};
use crate::error::{Error, Result};
use crate::partitions::{bipartitions_of, partitions_of, BiPartition, Partition};

/// Default bound on brute-force enumeration.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    Dihedral,
    H3,
    E6,
    E7,
    E8,
    F4,
    H4,
}

impl Family {
    /// Whether the library carries computational data for this family.
    pub fn is_computable(self) -> bool {
        matches!(self, Family::A | Family::B | Family::D | Family::Dihedral | Family::H3)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::Dihedral => "I2",
            Family::H3 => "H3",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::H4 => "H4",
        };
        f.write_str(s)
    }
}

/// An irreducible finite Coxeter group of a computable family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterDescriptor {
    family: Family,
    param: usize,
}

/// Checks the parameter range and builds the descriptor. For `H3` the
/// parameter is ignored.
pub fn descriptor(family: Family, param: usize) -> Result<CoxeterDescriptor> {
    let min = match family {
        Family::A => 1,
        Family::B => 2,
        Family::D => 4,
        Family::Dihedral => 3,
        Family::H3 => return Ok(CoxeterDescriptor { family, param: 3 }),
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    if param < min {
        return Err(Error::ParameterOutOfRange { family: family.to_string(), param });
    }
    Ok(CoxeterDescriptor { family, param })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

impl CoxeterDescriptor {
    pub fn family(&self) -> Family {
        self.family
    }

    /// `n` for A_n, B_n, D_n and I2(n); 3 for H3.
    pub fn param(&self) -> usize {
        self.param
    }

    /// Dimension of the reflection representation.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::Dihedral => 2,
            _ => self.param,
        }
    }

    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<usize> {
        let n = self.param;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d
            }
            Family::Dihedral => vec![2, n],
            Family::H3 => vec![2, 6, 10],
            _ => unreachable!("descriptor only holds computable families"),
        }
    }

    pub fn order(&self) -> u64 {
        let n = self.param;
        match self.family {
            Family::A => factorial(n + 1),
            Family::B => (1u64 << n) * factorial(n),
            Family::D => (1u64 << (n - 1)) * factorial(n),
            Family::Dihedral => 2 * n as u64,
            Family::H3 => 120,
            _ => unreachable!(),
        }
    }

    /// Number of reflections, `sum (d_i - 1)`; also the top coinvariant degree.
    pub fn reflection_count(&self) -> usize {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    /// Coxeter matrix `m(s, s')` for the generators returned by
    /// [`canonical_rep_generators`].
    pub fn coxeter_matrix(&self) -> Vec<Vec<usize>> {
        let r = match self.family {
            Family::Dihedral => 2,
            _ => self.param,
        };
        let mut m = vec![vec![2; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut set = |i: usize, j: usize, v: usize| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match self.family {
            Family::A => (0..r - 1).for_each(|i| set(i, i + 1, 3)),
            Family::B => {
                (0..r - 2).for_each(|i| set(i, i + 1, 3));
                set(r - 2, r - 1, 4);
            }
            Family::D => {
                (0..r - 2).for_each(|i| set(i, i + 1, 3));
                set(r - 3, r - 1, 3);
            }
            Family::Dihedral => set(0, 1, self.param),
            Family::H3 => {
                set(0, 1, 5);
                set(1, 2, 3);
            }
            _ => unreachable!(),
        }
        m
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Dihedral => format!("I2({})", self.param),
            Family::H3 => "H3".to_string(),
            f => format!("{f}{}", self.param),
        }
    }
}

impl fmt::Display for CoxeterDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One direct factor of a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    Group(CoxeterDescriptor),
    /// E6, E7, E8, F4 or H4: only the classification verdict is available.
    ClassificationOnly(Family),
}

impl Factor {
    pub fn family(&self) -> Family {
        match self {
            Factor::Group(g) => g.family(),
            Factor::ClassificationOnly(f) => *f,
        }
    }

    /// The `n` of a D_n factor, for the parity test of the classification.
    pub fn d_rank(&self) -> Option<usize> {
        match self {
            Factor::Group(g) if g.family() == Family::D => Some(g.param()),
            _ => None,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Group(g) => write!(f, "{g}"),
            Factor::ClassificationOnly(fam) => write!(f, "{fam}"),
        }
    }
}

/// A finite Coxeter group as a direct product of irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductDescriptor {
    factors: Vec<Factor>,
}

impl ProductDescriptor {
    /// Panics on an empty factor list.
    pub fn new(factors: Vec<Factor>) -> Self {
        assert!(!factors.is_empty(), "a product needs at least one factor");
        ProductDescriptor { factors }
    }

    pub fn single(g: CoxeterDescriptor) -> Self {
        ProductDescriptor::new(vec![Factor::Group(g)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The computable factors, or `UnsupportedFamily` naming the first
    /// classification-only one.
    pub fn computable_factors(&self) -> Result<Vec<CoxeterDescriptor>> {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Group(g) => Ok(*g),
                Factor::ClassificationOnly(fam) => Err(Error::UnsupportedFamily(fam.to_string())),
            })
            .collect()
    }

    pub fn is_computable(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::Group(_)))
    }
}

impl fmt::Display for ProductDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for ProductDescriptor {
    type Err = Error;

    /// Parses `A4`, `B3`, `D6`, `I2(7)`, `H3`, `G2` and products such as
    /// `A2xD6xE7`.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut factors = Vec::new();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            let start = pos;
            let Some(&letter) = bytes.get(pos) else {
                return Err(Error::Parse { pos, msg: "expected a group type".into() });
            };
            if !letter.is_ascii_uppercase() {
                return Err(Error::Parse { pos, msg: format!("expected a type letter, found {:?}", letter as char) });
            }
            pos += 1;
            let digits_at = |pos: &mut usize| -> Option<usize> {
                let d0 = *pos;
                while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                s[d0..*pos].parse().ok()
            };
            let num_pos = pos;
            let Some(n) = digits_at(&mut pos) else {
                return Err(Error::Parse { pos: num_pos, msg: "expected a rank".into() });
            };
            let factor = match (letter, n) {
                (b'I', 2) => {
                    if bytes.get(pos) != Some(&b'(') {
                        return Err(Error::Parse { pos, msg: "expected '(' after I2".into() });
                    }
                    pos += 1;
                    let inner = pos;
                    let m = digits_at(&mut pos)
                        .ok_or(Error::Parse { pos: inner, msg: "expected dihedral parameter".into() })?;
                    if bytes.get(pos) != Some(&b')') {
                        return Err(Error::Parse { pos, msg: "expected ')'".into() });
                    }
                    pos += 1;
                    Factor::Group(descriptor(Family::Dihedral, m)?)
                }
                (b'A', n) => Factor::Group(descriptor(Family::A, n)?),
                (b'B', n) => Factor::Group(descriptor(Family::B, n)?),
                (b'D', n) => Factor::Group(descriptor(Family::D, n)?),
                (b'G', 2) => Factor::Group(descriptor(Family::Dihedral, 6)?),
                (b'H', 3) => Factor::Group(descriptor(Family::H3, 3)?),
                (b'H', 4) => Factor::ClassificationOnly(Family::H4),
                (b'E', 6) => Factor::ClassificationOnly(Family::E6),
                (b'E', 7) => Factor::ClassificationOnly(Family::E7),
                (b'E', 8) => Factor::ClassificationOnly(Family::E8),
                (b'F', 4) => Factor::ClassificationOnly(Family::F4),
                _ => return Err(Error::UnknownType(s[start..pos].to_string())),
            };
            factors.push(factor);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => break,
                Some(b'x') => pos += 1,
                Some(&c) => {
                    return Err(Error::Parse { pos, msg: format!("expected 'x' or end, found {:?}", c as char) })
                }
            }
        }
        Ok(ProductDescriptor::new(factors))
    }
}

/// Conjugacy classes of the rotation group A5 of the icosahedron, labelled
/// by the rotation angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IcosahedralClass {
    Identity,
    /// half turns
    Order2,
    /// rotations by 2pi/3
    Order3,
    /// rotations by 2pi/5
    Order5A,
    /// rotations by 4pi/5
    Order5B,
}

impl IcosahedralClass {
    pub const ALL: [IcosahedralClass; 5] = [
        IcosahedralClass::Identity,
        IcosahedralClass::Order2,
        IcosahedralClass::Order3,
        IcosahedralClass::Order5A,
        IcosahedralClass::Order5B,
    ];

    pub fn size(self) -> u64 {
        match self {
            IcosahedralClass::Identity => 1,
            IcosahedralClass::Order2 => 15,
            IcosahedralClass::Order3 => 20,
            IcosahedralClass::Order5A | IcosahedralClass::Order5B => 12,
        }
    }

    /// `2 cos(theta)` for the rotation angle.
    pub fn two_cos(self) -> Scalar {
        match self {
            IcosahedralClass::Identity => Scalar::from_int(2),
            IcosahedralClass::Order2 => Scalar::from_int(-2),
            IcosahedralClass::Order3 => Scalar::from_int(-1),
            IcosahedralClass::Order5A => &Scalar::golden_ratio() - &Scalar::one(),
            IcosahedralClass::Order5B => -Scalar::golden_ratio(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    /// Cycle type in S_{n+1}.
    Cycle(Partition),
    /// Signed cycle type: positive and negative cycles.
    Signed { positive: Partition, negative: Partition },
    /// Rotation by `2 pi k / n`, `0 <= k <= n/2`.
    Rotation(usize),
    /// Reflections `sigma rho^i` with `i` of the given parity (always 0 for odd n).
    Reflection(usize),
    /// `(c, +1)` or `(c, -1)` in A5 x {+-1}.
    Icosahedral { class: IcosahedralClass, negated: bool },
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Cycle(mu) => write!(f, "{mu}"),
            ClassLabel::Signed { positive, negative } => write!(f, "({positive},{negative})"),
            ClassLabel::Rotation(k) => write!(f, "rho^{k}"),
            ClassLabel::Reflection(p) => write!(f, "sigma rho^{p}"),
            ClassLabel::Icosahedral { class, negated } => {
                write!(f, "{}{class:?}", if *negated { "-" } else { "" })
            }
        }
    }
}

/// A conjugacy class with its size and `det(1 - t Phi(g))` as a factor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDatum {
    pub label: ClassLabel,
    pub size: u64,
    pub det_factors: Vec<ScalarPoly>,
}

impl ClassDatum {
    /// The expanded polynomial `det(1 - t Phi(g))`.
    pub fn det_poly(&self) -> ScalarPoly {
        self.det_factors.iter().fold(ScalarPoly::one(), |acc, f| &acc * f)
    }
}

/// `1 + t + ... + t^{r-1}`.
fn geometric(r: usize) -> ScalarPoly {
    ScalarPoly::from_ints(&vec![1; r])
}

fn signed_classes(n: usize, even_negative_only: bool) -> Vec<ClassDatum> {
    let order = (1u64 << n) * factorial(n);
    bipartitions_of(n)
        .into_iter()
        .filter(|bp| !even_negative_only || bp.beta.len() % 2 == 0)
        .map(|BiPartition { alpha: positive, beta: negative }| {
            let centralizer = positive.centralizer_order()
                * negative.centralizer_order()
                * (num::BigInt::one() << (positive.len() + negative.len()));
            let size = u64::try_from(num::BigInt::from(order) / centralizer).unwrap();
            let mut det_factors: Vec<ScalarPoly> =
                positive.parts().iter().map(|&r| ScalarPoly::one_minus_t_pow(r)).collect();
            det_factors.extend(negative.parts().iter().map(|&r| ScalarPoly::one_plus_t_pow(r)));
            ClassDatum { label: ClassLabel::Signed { positive, negative }, size, det_factors }
        })
        .collect()
}

/// The complete list of conjugacy classes. For D_n the classes are the
/// W(B_n)-classes contained in W(D_n); classes that split in W(D_n) are kept
/// whole.
pub fn conjugacy_classes(g: &CoxeterDescriptor) -> Vec<ClassDatum> {
    let n = g.param();
    match g.family() {
        Family::A => {
            let order = factorial(n + 1);
            partitions_of(n + 1)
                .into_iter()
                .rev()
                .map(|mu| {
                    let size = u64::try_from(num::BigInt::from(order) / mu.centralizer_order()).unwrap();
                    // prod (1 - t^{mu_i}) / (1 - t): the first cycle loses its (1 - t)
                    let mut det_factors = Vec::new();
                    for (i, &r) in mu.parts().iter().enumerate() {
                        let f = if i == 0 { geometric(r) } else { ScalarPoly::one_minus_t_pow(r) };
                        if f != ScalarPoly::one() {
                            det_factors.push(f);
                        }
                    }
                    ClassDatum { label: ClassLabel::Cycle(mu), size, det_factors }
                })
                .collect()
        }
        Family::B => signed_classes(n, false),
        Family::D => signed_classes(n, true),
        Family::Dihedral => {
            let nn = n as u32;
            let mut out = Vec::new();
            for k in 0..=n / 2 {
                let size = if k == 0 || 2 * k == n { 1 } else { 2 };
                out.push(ClassDatum {
                    label: ClassLabel::Rotation(k),
                    size,
                    det_factors: vec![
                        ScalarPoly::one_minus(Scalar::root_of_unity(nn, k as i64)),
                        ScalarPoly::one_minus(Scalar::root_of_unity(nn, -(k as i64))),
                    ],
                });
            }
            let reflection_factors = vec![ScalarPoly::one_minus_t_pow(1), ScalarPoly::one_plus_t_pow(1)];
            if n % 2 == 1 {
                out.push(ClassDatum { label: ClassLabel::Reflection(0), size: n as u64, det_factors: reflection_factors });
            } else {
                for parity in 0..2 {
                    out.push(ClassDatum {
                        label: ClassLabel::Reflection(parity),
                        size: n as u64 / 2,
                        det_factors: reflection_factors.clone(),
                    });
                }
            }
            out
        }
        Family::H3 => {
            let mut out = Vec::new();
            for negated in [false, true] {
                for class in IcosahedralClass::ALL {
                    // rotation: (1 - t)(1 - 2cos(theta) t + t^2); -g substitutes t -> -t
                    let s = if negated { -1 } else { 1 };
                    let c = class.two_cos();
                    let linear = ScalarPoly::from_ints(&[1, -s]);
                    let quadratic = ScalarPoly::new(vec![
                        Scalar::one(),
                        -(&c * &Scalar::from_int(s)),
                        Scalar::one(),
                    ]);
                    out.push(ClassDatum {
                        label: ClassLabel::Icosahedral { class, negated },
                        size: class.size(),
                        det_factors: vec![linear, quadratic],
                    });
                }
            }
            out
        }
        _ => unreachable!(),
    }
}

/// Permutation of `{0..=n}` acting on `R^{n+1}` modulo the all-ones line, in
/// the basis `e_0, ..., e_{n-1}` with `e_n = -(e_0 + ... + e_{n-1})`.
pub fn permutation_matrix_a(perm: &[usize]) -> Matrix {
    let n = perm.len() - 1;
    let mut m = Matrix::zeros(n, n);
    for (i, &img) in perm.iter().enumerate().take(n) {
        if img < n {
            m[(img, i)] = Scalar::one();
        } else {
            for r in 0..n {
                m[(r, i)] = Scalar::from_int(-1);
            }
        }
    }
    m
}

/// Signed permutation: `e_i -> sign_i e_{perm_i}`.
pub fn signed_permutation_matrix(perm: &[usize], signs: &[i64]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(perm[i], i)] = Scalar::from_int(signs[i]);
    }
    m
}

fn h3_generators() -> Vec<Matrix> {
    let coxeter = [[1usize, 5, 2], [5, 1, 3], [2, 3, 1]];
    let two_cos = |m: usize| match m {
        1 => Scalar::from_int(-2),
        2 => Scalar::zero(),
        3 => Scalar::one(),
        5 => Scalar::golden_ratio(),
        _ => unreachable!(),
    };
    (0..3)
        .map(|s| {
            // s(e_j) = e_j + 2cos(pi/m(s,j)) e_s
            let mut m = Matrix::identity(3);
            for j in 0..3 {
                let v = &m[(s, j)] + &two_cos(coxeter[s][j]);
                m[(s, j)] = v;
            }
            m
        })
        .collect()
}

/// `rho = diag(zeta, zeta^{-1})` on `(z, zbar)`.
pub fn dihedral_rotation(n: usize) -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    m[(0, 0)] = Scalar::root_of_unity(n as u32, 1);
    m[(1, 1)] = Scalar::root_of_unity(n as u32, -1);
    m
}

/// `sigma`: `z <-> zbar`.
pub fn dihedral_reflection() -> Matrix {
    Matrix::from_ints(&[&[0, 1], &[1, 0]])
}

/// One matrix per simple reflection, ordered as in
/// [`CoxeterDescriptor::coxeter_matrix`].
pub fn canonical_rep_generators(g: &CoxeterDescriptor) -> Vec<Matrix> {
    let n = g.param();
    match g.family() {
        Family::A => (0..n)
            .map(|i| {
                let mut perm: Vec<usize> = (0..=n).collect();
                perm.swap(i, i + 1);
                permutation_matrix_a(&perm)
            })
            .collect(),
        Family::B | Family::D => {
            let mut gens: Vec<Matrix> = (0..n - 1)
                .map(|i| {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.swap(i, i + 1);
                    signed_permutation_matrix(&perm, &vec![1; n])
                })
                .collect();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut signs = vec![1; n];
            if g.family() == Family::B {
                signs[n - 1] = -1;
            } else {
                perm.swap(n - 2, n - 1);
                signs[n - 2] = -1;
                signs[n - 1] = -1;
            }
            gens.push(signed_permutation_matrix(&perm, &signs));
            gens
        }
        Family::Dihedral => {
            let sigma = dihedral_reflection();
            let tau = &dihedral_rotation(n) * &sigma;
            vec![sigma, tau]
        }
        Family::H3 => h3_generators(),
        _ => unreachable!(),
    }
}

/// An explicit element of the class, where one is easy to write down. H3
/// classes are identified by their det polynomial instead.
pub fn class_representative(g: &CoxeterDescriptor, label: &ClassLabel) -> Option<Matrix> {
    let n = g.param();
    let cycles_perm = |parts: &[usize], len: usize| {
        let mut perm: Vec<usize> = (0..len).collect();
        let mut starts = Vec::new();
        let mut at = 0;
        for &r in parts {
            for k in 0..r {
                perm[at + k] = at + (k + 1) % r;
            }
            starts.push(at);
            at += r;
        }
        (perm, starts)
    };
    match (g.family(), label) {
        (Family::A, ClassLabel::Cycle(mu)) => Some(permutation_matrix_a(&cycles_perm(mu.parts(), n + 1).0)),
        (Family::B | Family::D, ClassLabel::Signed { positive, negative }) => {
            let mut parts = positive.parts().to_vec();
            parts.extend_from_slice(negative.parts());
            let (perm, starts) = cycles_perm(&parts, n);
            let mut signs = vec![1; n];
            for &s in &starts[positive.len()..] {
                signs[s] = -1;
            }
            Some(signed_permutation_matrix(&perm, &signs))
        }
        (Family::Dihedral, ClassLabel::Rotation(k)) => Some(dihedral_rotation(n).pow(*k as u32)),
        (Family::Dihedral, ClassLabel::Reflection(p)) => {
            Some(&dihedral_reflection() * &dihedral_rotation(n).pow(*p as u32))
        }
        _ => None,
    }
}

/// A finite matrix group given by generators together with all its elements.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub dim: usize,
    pub generators: Vec<Matrix>,
    pub elements: Vec<Matrix>,
}

impl MatrixGroup {
    /// Closes the generators under multiplication, failing once more than
    /// `cap` elements have been found.
    pub fn generate(generators: Vec<Matrix>, cap: usize) -> Result<MatrixGroup> {
        let dim = generators.first().map_or(0, Matrix::rows);
        let id = Matrix::identity(dim);
        let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = &x * s;
                if seen.insert(y.clone()) {
                    if elements.len() == cap {
                        return Err(Error::OrderExceedsCap { order: cap + 1, cap });
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(MatrixGroup { dim, generators, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Direct product acting block-diagonally on `V1 + V2`.
    pub fn direct_product(&self, other: &MatrixGroup, cap: usize) -> Result<MatrixGroup> {
        let order = self.order() * other.order();
        if order > cap {
            return Err(Error::OrderExceedsCap { order, cap });
        }
        let id1 = Matrix::identity(self.dim);
        let id2 = Matrix::identity(other.dim);
        let mut generators: Vec<Matrix> = self.generators.iter().map(|g| g.direct_sum(&id2)).collect();
        generators.extend(other.generators.iter().map(|g| id1.direct_sum(g)));
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| a.direct_sum(b)))
            .collect();
        Ok(MatrixGroup { dim: self.dim + other.dim, generators, elements })
    }

    /// The trivial group on a zero-dimensional space.
    pub fn trivial() -> MatrixGroup {
        MatrixGroup { dim: 0, generators: Vec::new(), elements: vec![Matrix::identity(0)] }
    }

    /// Conjugacy classes by brute force, as index lists into `elements`.
    pub fn conjugacy_partition(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&Matrix, usize> = self.elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let inverses: Vec<Matrix> = self
            .generators
            .iter()
            .map(|s| s.inverse().expect("group elements are invertible"))
            .collect();
        let mut class_of = vec![usize::MAX; self.elements.len()];
        let mut classes = Vec::new();
        for start in 0..self.elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = &self.elements[members[k]];
                for (s, s_inv) in self.generators.iter().zip(&inverses) {
                    let y = &(s * x) * s_inv;
                    let j = index[&y];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                    }
                }
                k += 1;
            }
            classes.push(members);
        }
        classes
    }
}

/// All elements of the group in its reflection representation.
pub fn enumerate_elements(g: &CoxeterDescriptor, cap: usize) -> Result<Vec<Matrix>> {
    Ok(matrix_group(g, cap)?.elements)
}

/// Generators plus enumerated elements, refusing groups larger than `cap`.
pub fn matrix_group(g: &CoxeterDescriptor, cap: usize) -> Result<MatrixGroup> {
    let order = g.order() as usize;
    if order > cap {
        return Err(Error::OrderExceedsCap { order, cap });
    }
    MatrixGroup::generate(canonical_rep_generators(g), cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(f: Family, n: usize) -> CoxeterDescriptor {
        descriptor(f, n).unwrap()
    }

    #[test]
    fn descriptor_examples() {
        let b2 = d(Family::B, 2);
        assert_eq!((b2.order(), b2.degrees(), b2.reflection_count()), (8, vec![2, 4], 4));
        let h3 = d(Family::H3, 0);
        assert_eq!((h3.order(), h3.degrees(), h3.reflection_count()), (120, vec![2, 6, 10], 15));
        let i5 = d(Family::Dihedral, 5);
        assert_eq!((i5.order(), i5.degrees(), i5.reflection_count()), (10, vec![2, 5], 5));
        assert_eq!(d(Family::D, 5).degrees(), vec![2, 4, 6, 8, 5]);
        assert_eq!(d(Family::A, 3).degrees(), vec![2, 3, 4]);
    }

    #[test]
    fn descriptor_errors() {
        assert!(matches!(descriptor(Family::E7, 7), Err(Error::UnsupportedFamily(_))));
        assert!(matches!(descriptor(Family::B, 1), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!(descriptor(Family::D, 3), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!(descriptor(Family::A, 0), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!(descriptor(Family::Dihedral, 2), Err(Error::ParameterOutOfRange { .. })));
    }

    #[test]
    fn degree_product_is_order() {
        let groups = [
            d(Family::A, 1),
            d(Family::A, 6),
            d(Family::B, 5),
            d(Family::D, 4),
            d(Family::D, 7),
            d(Family::Dihedral, 9),
            d(Family::H3, 3),
        ];
        for g in groups {
            assert_eq!(g.degrees().iter().map(|&x| x as u64).product::<u64>(), g.order(), "{g}");
        }
    }

    #[test]
    fn class_examples() {
        let sizes = |g| conjugacy_classes(&g).iter().map(|c| c.size).collect::<Vec<_>>();
        assert_eq!(sizes(d(Family::A, 2)), vec![1, 3, 2]);
        let b2 = sizes(d(Family::B, 2));
        assert_eq!((b2.len(), b2.iter().sum::<u64>()), (5, 8));
        assert_eq!(sizes(d(Family::Dihedral, 5)), vec![1, 2, 2, 5]);
    }

    #[test]
    fn class_sizes_sum_to_order_and_dets_have_degree_n() {
        for g in [d(Family::A, 4), d(Family::B, 4), d(Family::D, 6), d(Family::Dihedral, 8), d(Family::H3, 3)] {
            let classes = conjugacy_classes(&g);
            assert_eq!(classes.iter().map(|c| c.size).sum::<u64>(), g.order(), "{g}");
            for c in &classes {
                let p = c.det_poly();
                assert_eq!(p.degree(), Some(g.rank()), "{g} {}", c.label);
                assert!(p.coeff(0).is_one());
            }
        }
    }

    #[test]
    fn generator_examples() {
        let a1 = canonical_rep_generators(&d(Family::A, 1));
        assert_eq!(a1, vec![Matrix::from_ints(&[&[-1]])]);
        let i4 = canonical_rep_generators(&d(Family::Dihedral, 4));
        assert_eq!((&i4[0] * &i4[1]).order(10), Some(4));
        let b2 = canonical_rep_generators(&d(Family::B, 2));
        assert_eq!((&b2[0] * &b2[1]).order(10), Some(4));
    }

    #[test]
    fn coxeter_relations_hold() {
        for g in [d(Family::A, 4), d(Family::B, 4), d(Family::D, 5), d(Family::Dihedral, 7), d(Family::H3, 3)] {
            let gens = canonical_rep_generators(&g);
            let m = g.coxeter_matrix();
            for i in 0..gens.len() {
                for j in 0..gens.len() {
                    let prod = &gens[i] * &gens[j];
                    assert_eq!(prod.order(20), Some(m[i][j] as u32), "{g} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_elements(&d(Family::A, 2), DEFAULT_CAP).unwrap().len(), 6);
        assert_eq!(enumerate_elements(&d(Family::B, 3), DEFAULT_CAP).unwrap().len(), 48);
        assert_eq!(enumerate_elements(&d(Family::H3, 3), DEFAULT_CAP).unwrap().len(), 120);
        assert_eq!(
            enumerate_elements(&d(Family::B, 5), 1000).unwrap_err(),
            Error::OrderExceedsCap { order: 3840, cap: 1000 }
        );
    }

    #[test]
    fn parse_groups() {
        let p: ProductDescriptor = "H3".parse().unwrap();
        assert_eq!(p.factors(), &[Factor::Group(d(Family::H3, 3))]);
        let p: ProductDescriptor = "I2(7)".parse().unwrap();
        assert_eq!(p.factors(), &[Factor::Group(d(Family::Dihedral, 7))]);
        let p: ProductDescriptor = "B3xB3".parse().unwrap();
        assert_eq!(p.factors().len(), 2);
        let p: ProductDescriptor = "A2xD6xE7".parse().unwrap();
        assert_eq!(
            p.factors(),
            &[Factor::Group(d(Family::A, 2)), Factor::Group(d(Family::D, 6)), Factor::ClassificationOnly(Family::E7)]
        );
        assert_eq!(p.to_string(), "A2xD6xE7");
        assert!(matches!("Q5".parse::<ProductDescriptor>(), Err(Error::UnknownType(_))));
        assert!(matches!("E9".parse::<ProductDescriptor>(), Err(Error::UnknownType(_))));
        assert!(matches!("A2x".parse::<ProductDescriptor>(), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!("I2(7".parse::<ProductDescriptor>(), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!("D3".parse::<ProductDescriptor>(), Err(Error::ParameterOutOfRange { .. })));
    }
}
