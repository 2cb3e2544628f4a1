//! Fake degrees by closed form and by the Molien-type character sum, first
//! occurrences, and Gelfand verdicts.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{gaussian_product, series_expand, IntPolynomial, RationalFunction, Scalar, ScalarPoly};
use crate::characters::{check_label, character, dimension, labels, A5Irrep, DihedralLabel, IrreducibleLabel};
use crate::coxeter::{conjugacy_classes, ClassDatum, CoxeterDescriptor, Factor, Family, ProductDescriptor};
use crate::error::{Error, Result};
use crate::partitions::{lambda_values, BiPartition, Partition};

fn choose3(m: usize) -> usize {
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

/// `prod_{i<j} (t^{s l_i} - t^{s l_j})` over `prod_j prod_{i<=l_j} (t^{s i} - 1)`
/// for a strictly decreasing `l`.
fn lambda_block(lambda: &[usize], s: usize) -> (IntPolynomial, IntPolynomial) {
    let mut num = IntPolynomial::one();
    for (i, &li) in lambda.iter().enumerate() {
        for &lj in &lambda[i + 1..] {
            num = num * IntPolynomial::binomial(s * li, s * lj);
        }
    }
    let den = lambda
        .iter()
        .map(|&l| gaussian_product(&(1..=l).map(|i| s * i).collect::<Vec<_>>()))
        .fold(IntPolynomial::one(), |a, b| a * b);
    (num, den)
}

/// Fake degree of the irreducible `U_alpha` of `S_{|alpha|}`.
pub fn fake_degree_a(alpha: &Partition) -> Result<IntPolynomial> {
    fake_degree_a_padded(alpha, alpha.len())
}

/// As [`fake_degree_a`], computing the `lambda` statistics with `pad` rows.
/// The result does not depend on `pad`.
pub fn fake_degree_a_padded(alpha: &Partition, pad: usize) -> Result<IntPolynomial> {
    let n = alpha.size();
    let lambda = lambda_values(alpha, pad)?;
    let (block_num, block_den) = lambda_block(&lambda, 1);
    let num = gaussian_product(&(1..=n).collect::<Vec<_>>()) * block_num;
    num.exact_div(&block_den)?.unshift(choose3(pad))
}

/// Fake degree of `U_{alpha,beta}` of W(B_n), `n = |alpha| + |beta|`.
pub fn fake_degree_b(pair: &BiPartition) -> Result<IntPolynomial> {
    let n = pair.size();
    let lambda = lambda_values(&pair.alpha, pair.alpha.len())?;
    let mu = lambda_values(&pair.beta, pair.beta.len())?;
    let (ln, ld) = lambda_block(&lambda, 2);
    let (mn, md) = lambda_block(&mu, 2);
    let lead = gaussian_product(&(1..=n).map(|i| 2 * i).collect::<Vec<_>>()).shift(pair.beta.size());
    let shift = 2 * choose3(pair.alpha.len()) + 2 * choose3(pair.beta.len());
    (lead * ln * mn).exact_div(&(ld * md))?.unshift(shift)
}

/// Fake degree of an irreducible of W(D_n). For `alpha = beta` both split
/// constituents have the same fake degree; for `alpha != beta` the two
/// orientations of the pair both enter.
pub fn fake_degree_d(pair: &BiPartition, split: Option<crate::characters::SplitTag>) -> Result<IntPolynomial> {
    let n = pair.size();
    let numerator = if pair.alpha == pair.beta {
        if split.is_none() {
            return Err(Error::MissingSplitTag(pair.to_string()));
        }
        fake_degree_b(pair)?
    } else {
        if split.is_some() {
            return Err(Error::InvalidLabel(format!("{pair} takes no split tag")));
        }
        fake_degree_b(pair)? + fake_degree_b(&pair.swapped())?
    };
    (IntPolynomial::t_pow_minus_one(n) * numerator).exact_div(&IntPolynomial::t_pow_minus_one(2 * n))
}

/// Fake degree of a label of I2(n). For even `n` the two one-dimensional
/// characters that are `-1` on the rotation both give `t^{n/2}`.
pub fn fake_degree_dihedral(n: usize, label: DihedralLabel) -> Result<IntPolynomial> {
    let invalid = || Error::InvalidLabel(format!("{label:?} for I2({n})"));
    match label {
        DihedralLabel::Trivial => Ok(IntPolynomial::one()),
        DihedralLabel::Sign => Ok(IntPolynomial::t_pow(n)),
        DihedralLabel::DetPlus | DihedralLabel::DetMinus if n % 2 == 0 => Ok(IntPolynomial::t_pow(n / 2)),
        DihedralLabel::W(j) if j >= 1 && 2 * j < n => Ok(IntPolynomial::t_pow(j) + IntPolynomial::t_pow(n - j)),
        _ => Err(invalid()),
    }
}

/// Tabulated fake degrees of H3 (`Y3'` is the reflection representation).
pub fn fake_degree_h3(rep: A5Irrep, primed: bool) -> IntPolynomial {
    let exps: &[usize] = match (rep, primed) {
        (A5Irrep::U1, false) => &[0],
        (A5Irrep::V4, false) => &[4, 6, 8, 12],
        (A5Irrep::W5, false) => &[2, 4, 6, 8, 10],
        (A5Irrep::Y3, false) => &[6, 10, 14],
        (A5Irrep::Z3, false) => &[8, 10, 12],
        (A5Irrep::U1, true) => &[15],
        (A5Irrep::V4, true) => &[3, 7, 9, 11],
        (A5Irrep::W5, true) => &[5, 7, 9, 11, 13],
        (A5Irrep::Y3, true) => &[1, 5, 9],
        (A5Irrep::Z3, true) => &[3, 5, 7],
    };
    exps.iter().map(|&e| IntPolynomial::t_pow(e)).sum()
}

/// Closed-form fake degree of any label of a supported group.
pub fn fake_degree(g: &CoxeterDescriptor, label: &IrreducibleLabel) -> Result<IntPolynomial> {
    check_label(g, label)?;
    match label {
        IrreducibleLabel::A(a) => fake_degree_a(a),
        IrreducibleLabel::B(bp) => fake_degree_b(bp),
        IrreducibleLabel::D { pair, split } => fake_degree_d(pair, *split),
        IrreducibleLabel::Dihedral(l) => fake_degree_dihedral(g.param(), *l),
        IrreducibleLabel::H3 { rep, primed } => Ok(fake_degree_h3(*rep, *primed)),
    }
}

/// The class data of a group with `1/det(1 - t Phi(g))` expanded once, so
/// that many characters can be summed against it.
#[derive(Clone, Debug)]
pub struct MolienSum {
    group: CoxeterDescriptor,
    classes: Vec<ClassDatum>,
    inverse_dets: Vec<Vec<Scalar>>,
    numerator: ScalarPoly,
    top: usize,
}

impl MolienSum {
    pub fn new(g: &CoxeterDescriptor) -> Result<Self> {
        let top = g.reflection_count();
        let classes = conjugacy_classes(g);
        let inverse_dets = classes
            .iter()
            .map(|c| series_expand(&RationalFunction::new(ScalarPoly::one(), c.det_poly())?, top))
            .collect::<Result<Vec<_>>>()?;
        let numerator = g
            .degrees()
            .iter()
            .fold(ScalarPoly::one(), |acc, &d| &acc * &ScalarPoly::one_minus_t_pow(d));
        Ok(MolienSum { group: *g, classes, inverse_dets, numerator, top })
    }

    pub fn classes(&self) -> &[ClassDatum] {
        &self.classes
    }

    /// `|G|^-1 prod (1 - t^{d_i}) sum_c |c| chi(c) / det(1 - t Phi(c))`
    /// through degree `N`, for a class function given by its values.
    pub fn series(&self, values: &[Scalar]) -> Result<IntPolynomial> {
        let mut sum = vec![Scalar::zero(); self.top + 1];
        for ((class, chi), inv) in self.classes.iter().zip(values).zip(&self.inverse_dets) {
            if chi.is_zero() {
                continue;
            }
            let weight = &Scalar::from_int(class.size as i64) * chi;
            for (s, c) in sum.iter_mut().zip(inv) {
                *s += &(&weight * c);
            }
        }
        let inv_order = Scalar::Rational(BigRational::new(BigInt::one(), self.group.order().into()));
        let f = ScalarPoly::new(sum).mul_truncated(&self.numerator, self.top).scale(&inv_order);
        let mut coeffs = Vec::with_capacity(self.top + 1);
        for k in 0..=self.top {
            match f.coeff(k).as_integer() {
                Some(c) if !c.is_negative() => coeffs.push(c),
                _ => return Err(Error::NonIntegralResult { degree: k }),
            }
        }
        Ok(IntPolynomial::new(coeffs))
    }

    /// The fake degree of `label` from its character. For a split D label
    /// this is the sum over both constituents.
    pub fn fake_degree(&self, label: &IrreducibleLabel) -> Result<IntPolynomial> {
        check_label(&self.group, label)?;
        let values = self
            .classes
            .iter()
            .map(|c| character(&self.group, label, &c.label))
            .collect::<Result<Vec<_>>>()?;
        self.series(&values)
    }
}

/// One-shot form of [`MolienSum::fake_degree`].
pub fn fake_degree_molien(g: &CoxeterDescriptor, label: &IrreducibleLabel) -> Result<IntPolynomial> {
    MolienSum::new(g)?.fake_degree(label)
}

/// Closed forms against the character sum, label by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub compared: usize,
    /// `(label, closed form, character sum)` for every disagreement
    pub mismatches: Vec<(String, IntPolynomial, IntPolynomial)>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares [`fake_degree`] with [`MolienSum::fake_degree`] for every
/// label. A split D label is compared through the restricted character,
/// which accounts for both constituents and so gives twice the closed form.
pub fn oracle_check(g: &CoxeterDescriptor) -> Result<OracleReport> {
    let molien = MolienSum::new(g)?;
    let mut mismatches = Vec::new();
    let all = labels(g);
    for l in &all {
        let closed = fake_degree(g, l)?;
        let expected = match l {
            IrreducibleLabel::D { split: Some(_), .. } => closed.scale(&BigInt::from(2)),
            _ => closed.clone(),
        };
        let sum = molien.fake_degree(l)?;
        if sum != expected {
            mismatches.push((l.to_string(), closed, sum));
        }
    }
    Ok(OracleReport { compared: all.len(), mismatches })
}

/// Lowest exponent and its coefficient.
pub fn first_occurrence(f: &IntPolynomial) -> Result<(usize, BigInt)> {
    let p = f.valuation().ok_or(Error::ZeroPolynomial)?;
    Ok((p, f.coeff(p)))
}

/// Multiplicity of `label` in each homogeneous component of the polynomial
/// ring, degrees `0..=up_to`: the coefficients of `f_U / prod (1 - t^{d_i})`.
pub fn isotypic_series(g: &CoxeterDescriptor, label: &IrreducibleLabel, up_to: usize) -> Result<Vec<BigInt>> {
    let f = fake_degree(g, label)?;
    let mut out = f.coeffs().to_vec();
    out.resize(up_to + 1, BigInt::zero());
    out.truncate(up_to + 1);
    // divide by each (1 - t^d) in turn: running sums with stride d
    for d in g.degrees() {
        for k in d..=up_to {
            let prev = out[k - d].clone();
            out[k] += prev;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FakeDegreeReport {
    #[serde(skip)]
    pub label: IrreducibleLabel,
    #[serde(rename = "label")]
    pub label_text: String,
    #[serde(serialize_with = "serialize_poly")]
    pub fake_degree: IntPolynomial,
    pub p: usize,
    pub first_multiplicity: u64,
    pub dim: u64,
}

fn serialize_poly<S: serde::Serializer>(f: &IntPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.coeffs().len()))?;
    for c in f.coeffs() {
        seq.serialize_element(&c.to_i64().ok_or_else(|| serde::ser::Error::custom("coefficient overflow"))?)?;
    }
    seq.end()
}

pub fn fake_degree_report(g: &CoxeterDescriptor, label: &IrreducibleLabel) -> Result<FakeDegreeReport> {
    let f = fake_degree(g, label)?;
    let (p, mult) = first_occurrence(&f)?;
    Ok(FakeDegreeReport {
        label: label.clone(),
        label_text: label.to_string(),
        fake_degree: f,
        p,
        first_multiplicity: mult.to_u64().expect("multiplicity fits in u64"),
        dim: dimension(g, label)?.to_u64().expect("dimension fits in u64"),
    })
}

/// Reports for every label, in label order.
pub fn fake_degree_reports(g: &CoxeterDescriptor) -> Result<Vec<FakeDegreeReport>> {
    labels(g).iter().map(|l| fake_degree_report(g, l)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// from first-occurrence multiplicities of fake degrees
    Computed,
    /// from the rule: Gelfand iff no factor is D_{2k}, E7 or E8
    Classified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub factor: String,
    pub label: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub group: ProductDescriptor,
    pub method: Method,
    pub is_gelfand: bool,
    pub witnesses: Vec<Witness>,
}

/// Computed verdict for an irreducible group.
pub fn gelfand_verdict_computed(g: &CoxeterDescriptor) -> Result<Verdict> {
    gelfand_verdict_computed_product(&ProductDescriptor::single(*g))
}

/// Computed verdict for a product of computable factors. The model of a
/// product is the tensor product of the factor models, with first
/// occurrences adding and multiplicities multiplying, so it is a Gelfand
/// model iff every factor's is.
pub fn gelfand_verdict_computed_product(p: &ProductDescriptor) -> Result<Verdict> {
    let mut witnesses = Vec::new();
    for g in p.computable_factors()? {
        for r in fake_degree_reports(&g)? {
            if r.first_multiplicity > 1 {
                witnesses.push(Witness { factor: g.name(), label: r.label_text, multiplicity: r.first_multiplicity });
            }
        }
    }
    Ok(Verdict { group: p.clone(), method: Method::Computed, is_gelfand: witnesses.is_empty(), witnesses })
}

/// Whether a factor falls under the non-Gelfand clause of the
/// classification: D_n with `n` even, E7 or E8.
pub fn is_obstructing_factor(f: &Factor) -> bool {
    matches!(f.family(), Family::E7 | Family::E8) || f.d_rank().is_some_and(|n| n % 2 == 0)
}

/// Verdict from the classification alone. Carries no witnesses.
pub fn gelfand_verdict_classification(p: &ProductDescriptor) -> Verdict {
    Verdict {
        group: p.clone(),
        method: Method::Classified,
        is_gelfand: !p.factors().iter().any(is_obstructing_factor),
        witnesses: Vec::new(),
    }
}

/// Computed where every factor is computable, classified otherwise.
pub fn gelfand_verdict(p: &ProductDescriptor) -> Result<Verdict> {
    if p.is_computable() {
        gelfand_verdict_computed_product(p)
    } else {
        Ok(gelfand_verdict_classification(p))
    }
}

/// Sum of the dimensions of all irreducibles.
pub fn gelfand_dimension(g: &CoxeterDescriptor) -> Result<BigInt> {
    labels(g).iter().map(|l| dimension(g, l)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareReport {
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
}

impl PoincareReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `lhs - rhs`; zero on success.
    pub fn defect(&self) -> IntPolynomial {
        &self.lhs - &self.rhs
    }
}

/// Compares `sum_U dim(U) f_U(t)` with `prod (t^{d_i} - 1)/(t - 1)`.
pub fn poincare_check(g: &CoxeterDescriptor) -> Result<PoincareReport> {
    let mut lhs = IntPolynomial::zero();
    for l in labels(g) {
        lhs = lhs + fake_degree(g, &l)?.scale(&dimension(g, &l)?);
    }
    let rhs = g
        .degrees()
        .iter()
        .map(|&d| (1..d).map(IntPolynomial::t_pow).sum::<IntPolynomial>() + IntPolynomial::one())
        .fold(IntPolynomial::one(), |a, b| a * b);
    Ok(PoincareReport { lhs, rhs })
}
