//! Irreducible labels and exact character values on the class data of
//! [`crate::coxeter`].

use std::fmt;

use num::{BigInt, BigRational, One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::Scalar;
use crate::coxeter::{conjugacy_classes, ClassLabel, CoxeterDescriptor, Family, IcosahedralClass};
use crate::error::{Error, Result};
use crate::partitions::{bipartitions_of, partitions_of, rim_hooks, BiPartition, Partition};

mod modular;

/// Above this parameter the dihedral table is checked in `F_p` instead of in
/// cyclotomic residues.
const DIHEDRAL_RESIDUE_LIMIT: usize = 24;

/// Which constituent of a split restriction `U_{alpha,alpha}|W(D_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitTag {
    Prime,
    DoublePrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DihedralLabel {
    Trivial,
    Sign,
    /// `rho -> -1`, `sigma -> 1` (even n only)
    DetPlus,
    /// `rho -> -1`, `sigma -> -1` (even n only)
    DetMinus,
    /// the two-dimensional `W_j`
    W(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum A5Irrep {
    U1,
    V4,
    W5,
    Y3,
    Z3,
}

impl A5Irrep {
    pub const ALL: [A5Irrep; 5] = [A5Irrep::U1, A5Irrep::V4, A5Irrep::W5, A5Irrep::Y3, A5Irrep::Z3];

    /// Character of A5, with `Y3` the restriction of the reflection
    /// representation of H3.
    pub fn character(self, class: IcosahedralClass) -> Scalar {
        use IcosahedralClass::*;
        let phi = Scalar::golden_ratio();
        let one_minus_phi = &Scalar::one() - &phi;
        let int = Scalar::from_int;
        match (self, class) {
            (A5Irrep::U1, _) => int(1),
            (A5Irrep::V4, c) => int([4, 0, 1, -1, -1][c as usize]),
            (A5Irrep::W5, c) => int([5, 1, -1, 0, 0][c as usize]),
            (A5Irrep::Y3, Order5A) | (A5Irrep::Z3, Order5B) => phi,
            (A5Irrep::Y3, Order5B) | (A5Irrep::Z3, Order5A) => one_minus_phi,
            (A5Irrep::Y3 | A5Irrep::Z3, c) => int([3, -1, 0, 0, 0][c as usize]),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            A5Irrep::U1 => 1,
            A5Irrep::V4 => 4,
            A5Irrep::W5 => 5,
            A5Irrep::Y3 | A5Irrep::Z3 => 3,
        }
    }
}

/// An irreducible representation of a supported irreducible group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IrreducibleLabel {
    A(Partition),
    B(BiPartition),
    /// Unordered pair, stored in the orientation listed by [`labels`]; the
    /// split tag is present exactly when `alpha = beta`.
    D { pair: BiPartition, split: Option<SplitTag> },
    Dihedral(DihedralLabel),
    /// `primed` means `-1` acts by `-1`.
    H3 { rep: A5Irrep, primed: bool },
}

impl fmt::Display for IrreducibleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleLabel::A(a) => write!(f, "{a}"),
            IrreducibleLabel::B(bp) => write!(f, "{bp}"),
            IrreducibleLabel::D { pair, split } => {
                let tag = match split {
                    None => "",
                    Some(SplitTag::Prime) => "'",
                    Some(SplitTag::DoublePrime) => "''",
                };
                write!(f, "{{{},{}}}{tag}", pair.alpha, pair.beta)
            }
            IrreducibleLabel::Dihedral(l) => match l {
                DihedralLabel::Trivial => f.write_str("triv"),
                DihedralLabel::Sign => f.write_str("sign"),
                DihedralLabel::DetPlus => f.write_str("det+"),
                DihedralLabel::DetMinus => f.write_str("det-"),
                DihedralLabel::W(j) => write!(f, "W{j}"),
            },
            IrreducibleLabel::H3 { rep, primed } => write!(f, "{rep:?}{}", if *primed { "'" } else { "" }),
        }
    }
}

/// Is this pair the listed orientation of its unordered class?
fn is_d_orientation(bp: &BiPartition) -> bool {
    let (a, b) = (bp.alpha.size(), bp.beta.size());
    a > b || (a == b && bp.alpha.parts() >= bp.beta.parts())
}

/// Every irreducible label of `g`, in the fixed output order: partitions
/// reverse-lex, bipartitions by `|alpha|` descending.
pub fn labels(g: &CoxeterDescriptor) -> Vec<IrreducibleLabel> {
    let n = g.param();
    match g.family() {
        Family::A => partitions_of(n + 1).into_iter().map(IrreducibleLabel::A).collect(),
        Family::B => bipartitions_of(n).into_iter().map(IrreducibleLabel::B).collect(),
        Family::D => bipartitions_of(n)
            .into_iter()
            .filter(is_d_orientation)
            .flat_map(|pair| {
                if pair.alpha == pair.beta {
                    vec![
                        IrreducibleLabel::D { pair: pair.clone(), split: Some(SplitTag::Prime) },
                        IrreducibleLabel::D { pair, split: Some(SplitTag::DoublePrime) },
                    ]
                } else {
                    vec![IrreducibleLabel::D { pair, split: None }]
                }
            })
            .collect(),
        Family::Dihedral => {
            let mut out = vec![DihedralLabel::Trivial, DihedralLabel::Sign];
            if n % 2 == 0 {
                out.extend([DihedralLabel::DetPlus, DihedralLabel::DetMinus]);
            }
            out.extend((1..=(n - 1) / 2).map(DihedralLabel::W));
            out.into_iter().map(IrreducibleLabel::Dihedral).collect()
        }
        Family::H3 => [false, true]
            .into_iter()
            .flat_map(|primed| A5Irrep::ALL.into_iter().map(move |rep| IrreducibleLabel::H3 { rep, primed }))
            .collect(),
        _ => unreachable!(),
    }
}

/// Parses a label in the text form produced by `Display`, checking that it
/// belongs to `g`.
pub fn parse_label(g: &CoxeterDescriptor, s: &str) -> Result<IrreducibleLabel> {
    let s = s.trim();
    let invalid = || Error::InvalidLabel(format!("{s} for {g}"));
    let label = match g.family() {
        Family::A => IrreducibleLabel::A(s.parse()?),
        Family::B => IrreducibleLabel::B(s.parse()?),
        Family::D => {
            let (body, split) = if let Some(b) = s.strip_suffix("''") {
                (b, Some(SplitTag::DoublePrime))
            } else if let Some(b) = s.strip_suffix('\'') {
                (b, Some(SplitTag::Prime))
            } else {
                (s, None)
            };
            let inner = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).ok_or_else(invalid)?;
            let mut pair: BiPartition = format!("({inner})").parse()?;
            if !is_d_orientation(&pair) {
                pair = pair.swapped();
            }
            if pair.alpha == pair.beta && split.is_none() {
                return Err(Error::MissingSplitTag(s.to_string()));
            }
            IrreducibleLabel::D { pair, split }
        }
        Family::Dihedral => IrreducibleLabel::Dihedral(match s {
            "triv" => DihedralLabel::Trivial,
            "sign" => DihedralLabel::Sign,
            "det+" => DihedralLabel::DetPlus,
            "det-" => DihedralLabel::DetMinus,
            w => DihedralLabel::W(w.strip_prefix('W').and_then(|j| j.parse().ok()).ok_or_else(invalid)?),
        }),
        Family::H3 => {
            let (body, primed) = match s.strip_suffix('\'') {
                Some(b) => (b, true),
                None => (s, false),
            };
            let rep = A5Irrep::ALL.into_iter().find(|r| format!("{r:?}") == body).ok_or_else(invalid)?;
            IrreducibleLabel::H3 { rep, primed }
        }
        _ => unreachable!(),
    };
    check_label(g, &label)?;
    Ok(label)
}

/// Rejects labels that do not name an irreducible of `g`.
pub fn check_label(g: &CoxeterDescriptor, label: &IrreducibleLabel) -> Result<()> {
    let n = g.param();
    let ok = match (g.family(), label) {
        (Family::A, IrreducibleLabel::A(a)) => a.size() == n + 1,
        (Family::B, IrreducibleLabel::B(bp)) => bp.size() == n,
        (Family::D, IrreducibleLabel::D { pair, split }) => {
            if pair.alpha == pair.beta && split.is_none() {
                return Err(Error::MissingSplitTag(label.to_string()));
            }
            pair.size() == n && is_d_orientation(pair) && (pair.alpha == pair.beta) == split.is_some()
        }
        (Family::Dihedral, IrreducibleLabel::Dihedral(l)) => match l {
            DihedralLabel::Trivial | DihedralLabel::Sign => true,
            DihedralLabel::DetPlus | DihedralLabel::DetMinus => n % 2 == 0,
            DihedralLabel::W(j) => (1..=(n - 1) / 2).contains(j),
        },
        (Family::H3, IrreducibleLabel::H3 { .. }) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidLabel(format!("{label} for {g}")))
    }
}

/// Character of the irreducible `alpha` of `S_n` at cycle type `mu`, by the
/// Murnaghan-Nakayama rule.
pub fn character_s(alpha: &Partition, cycle_type: &Partition) -> Result<BigInt> {
    if alpha.size() != cycle_type.size() {
        return Err(Error::SizeMismatch { label: alpha.size(), class: cycle_type.size() });
    }
    Ok(mn_s(alpha, cycle_type.parts()))
}

fn mn_s(alpha: &Partition, cycles: &[usize]) -> BigInt {
    let Some((&r, rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    rim_hooks(alpha, r)
        .into_iter()
        .map(|(smaller, leg)| {
            let v = mn_s(&smaller, rest);
            if leg % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// Dimension of the `S_n`-irreducible `alpha`.
pub fn dim_s(alpha: &Partition) -> BigInt {
    mn_s(alpha, &vec![1; alpha.size()])
}

/// Character of `U_{alpha,beta}` of W(B_n) at the class with the given
/// positive and negative cycle types.
pub fn character_b(label: &BiPartition, positive: &Partition, negative: &Partition) -> Result<BigInt> {
    let class = positive.size() + negative.size();
    if label.size() != class {
        return Err(Error::SizeMismatch { label: label.size(), class });
    }
    let mut cycles: Vec<(usize, bool)> = positive.parts().iter().map(|&r| (r, false)).collect();
    cycles.extend(negative.parts().iter().map(|&r| (r, true)));
    cycles.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(mn_b(&label.alpha, &label.beta, &cycles))
}

fn mn_b(alpha: &Partition, beta: &Partition, cycles: &[(usize, bool)]) -> BigInt {
    let Some((&(r, negative), rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    let signed = |leg: usize, v: BigInt| if leg % 2 == 0 { v } else { -v };
    let from_alpha: BigInt = rim_hooks(alpha, r)
        .into_iter()
        .map(|(a, leg)| signed(leg, mn_b(&a, beta, rest)))
        .sum();
    let from_beta: BigInt = rim_hooks(beta, r)
        .into_iter()
        .map(|(b, leg)| signed(leg, mn_b(alpha, &b, rest)))
        .sum();
    if negative {
        from_alpha - from_beta
    } else {
        from_alpha + from_beta
    }
}

/// Character of the restriction of `U_{alpha,beta}` to W(D_n). For
/// `alpha = beta` this is the sum of the two split constituents.
pub fn character_d_restricted(label: &BiPartition, positive: &Partition, negative: &Partition) -> Result<BigInt> {
    if negative.len() % 2 == 1 {
        return Err(Error::OddNegativeClass);
    }
    character_b(label, positive, negative)
}

/// Character of a dihedral label at a class of I2(n).
pub fn character_dihedral(n: usize, label: DihedralLabel, class: &ClassLabel) -> Result<Scalar> {
    let invalid = || Error::InvalidLabel(format!("{label:?} at {class} in I2({n})"));
    let parity = |k: usize| Scalar::from_int(if k % 2 == 0 { 1 } else { -1 });
    match (label, class) {
        (DihedralLabel::DetPlus | DihedralLabel::DetMinus, _) if n % 2 == 1 => Err(invalid()),
        (DihedralLabel::W(j), _) if j == 0 || 2 * j >= n => Err(invalid()),
        (DihedralLabel::Trivial, ClassLabel::Rotation(_) | ClassLabel::Reflection(_)) => Ok(Scalar::one()),
        (DihedralLabel::Sign, ClassLabel::Rotation(_)) => Ok(Scalar::one()),
        (DihedralLabel::Sign, ClassLabel::Reflection(_)) => Ok(Scalar::from_int(-1)),
        (DihedralLabel::DetPlus | DihedralLabel::DetMinus, ClassLabel::Rotation(k)) => Ok(parity(*k)),
        (DihedralLabel::DetPlus, ClassLabel::Reflection(p)) => Ok(parity(*p)),
        (DihedralLabel::DetMinus, ClassLabel::Reflection(p)) => Ok(-parity(*p)),
        (DihedralLabel::W(j), ClassLabel::Rotation(k)) => {
            let e = (j * k) as i64;
            Ok(&Scalar::root_of_unity(n as u32, e) + &Scalar::root_of_unity(n as u32, -e))
        }
        (DihedralLabel::W(_), ClassLabel::Reflection(_)) => Ok(Scalar::zero()),
        _ => Err(invalid()),
    }
}

/// Character of an H3 label at a class of A5 x {+-1}.
pub fn character_h3(rep: A5Irrep, primed: bool, class: &ClassLabel) -> Result<Scalar> {
    match class {
        ClassLabel::Icosahedral { class, negated } => {
            let v = rep.character(*class);
            Ok(if primed && *negated { -v } else { v })
        }
        other => Err(Error::InvalidLabel(format!("H3 character at {other}"))),
    }
}

/// `chi_label(class)` for any supported group. For a split D label the
/// value is the restricted character, i.e. the sum over both constituents.
pub fn character(g: &CoxeterDescriptor, label: &IrreducibleLabel, class: &ClassLabel) -> Result<Scalar> {
    let int = |v: Result<BigInt>| v.map(Scalar::from_bigint);
    match (label, class) {
        (IrreducibleLabel::A(a), ClassLabel::Cycle(mu)) => int(character_s(a, mu)),
        (IrreducibleLabel::B(bp), ClassLabel::Signed { positive, negative }) => {
            int(character_b(bp, positive, negative))
        }
        (IrreducibleLabel::D { pair, .. }, ClassLabel::Signed { positive, negative }) => {
            int(character_d_restricted(pair, positive, negative))
        }
        (IrreducibleLabel::Dihedral(l), c) => character_dihedral(g.param(), *l, c),
        (IrreducibleLabel::H3 { rep, primed }, c) => character_h3(*rep, *primed, c),
        _ => Err(Error::InvalidLabel(format!("{label} at {class} in {g}"))),
    }
}

/// Degree of the irreducible representation.
pub fn dimension(g: &CoxeterDescriptor, label: &IrreducibleLabel) -> Result<BigInt> {
    check_label(g, label)?;
    Ok(match label {
        IrreducibleLabel::A(a) => dim_s(a),
        IrreducibleLabel::B(bp) => dim_b(bp),
        IrreducibleLabel::D { pair, split } => {
            let d = dim_b(pair);
            if split.is_some() {
                d / 2
            } else {
                d
            }
        }
        IrreducibleLabel::Dihedral(DihedralLabel::W(_)) => BigInt::from(2),
        IrreducibleLabel::Dihedral(_) => BigInt::one(),
        IrreducibleLabel::H3 { rep, .. } => BigInt::from(rep.dim()),
    })
}

fn dim_b(bp: &BiPartition) -> BigInt {
    let n = bp.size();
    let k = bp.alpha.size();
    let binom: BigInt = (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1));
    binom * dim_s(&bp.alpha) * dim_s(&bp.beta)
}

/// Rows used for orthogonality: each D pair with `alpha = beta` appears once,
/// as the restricted character, with weight 1/2.
fn orthogonality_rows(g: &CoxeterDescriptor) -> Vec<(IrreducibleLabel, BigRational)> {
    let mut rows = Vec::new();
    for label in labels(g) {
        let weight = match &label {
            IrreducibleLabel::D { split: Some(SplitTag::DoublePrime), .. } => continue,
            IrreducibleLabel::D { split: Some(SplitTag::Prime), .. } => BigRational::new(1.into(), 2.into()),
            _ => BigRational::one(),
        };
        rows.push((label, weight));
    }
    rows
}

/// Result of checking both orthogonality relations on the class data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub rows: usize,
    pub classes: usize,
    pub failures: Vec<String>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies row and column orthogonality exactly. The row relation reads
/// `<r, r'> = delta / w_r` and the column relation
/// `sum_r w_r r(c) conj(r(c')) = delta |G| / |c|`, with the weights of the
/// restricted D rows accounting for the unsplit classes.
pub fn orthogonality_check(g: &CoxeterDescriptor) -> Result<OrthogonalityReport> {
    if g.family() == Family::Dihedral && g.param() > DIHEDRAL_RESIDUE_LIMIT {
        return Ok(modular::dihedral_orthogonality(g.param()));
    }
    let classes = conjugacy_classes(g);
    let rows = orthogonality_rows(g);
    let order = Scalar::from_int(g.order() as i64);
    let mut table = Vec::with_capacity(rows.len());
    for (label, _) in &rows {
        table.push(classes.iter().map(|c| character(g, label, &c.label)).collect::<Result<Vec<_>>>()?);
    }
    let mut failures = Vec::new();
    for (i, (li, wi)) in rows.iter().enumerate() {
        for (j, (lj, _)) in rows.iter().enumerate().skip(i) {
            let mut acc = Scalar::zero();
            for (k, c) in classes.iter().enumerate() {
                acc += &(&Scalar::from_int(c.size as i64) * &(&table[i][k] * &table[j][k].conj()));
            }
            let expected = if i == j { &order * &Scalar::Rational(wi.recip()) } else { Scalar::zero() };
            if acc != expected {
                failures.push(format!("row {li} x {lj}: got {acc}, expected {expected}"));
            }
        }
    }
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate().skip(a) {
            let mut acc = Scalar::zero();
            for (r, (_, w)) in rows.iter().enumerate() {
                acc += &(&Scalar::Rational(w.clone()) * &(&table[r][a] * &table[r][b].conj()));
            }
            let expected =
                if a == b { &order * &Scalar::ratio(1, ca.size.to_i64().unwrap()) } else { Scalar::zero() };
            if acc != expected {
                failures.push(format!("column {} x {}: got {acc}, expected {expected}", ca.label, cb.label));
            }
        }
    }
    Ok(OrthogonalityReport { rows: rows.len(), classes: classes.len(), failures })
}
