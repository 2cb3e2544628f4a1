//! The Weyl algebra acting on polynomial functions, invariant operators by
//! group averaging, and the polynomial model as a joint kernel.
//!
//! Group elements act on coordinate functions through their matrices
//! (column `i` of `M(g)` is `g x_i`); derivatives transform by the inverse
//! transpose, so `g d_i = sum_j M(g)^{-T}[j][i] d_j`.

mod poly;

use std::collections::{BTreeMap, HashMap};

use num::BigInt;
use rayon::prelude::*;

use crate::algebra::{EchelonBasis, Matrix, Scalar};
use crate::characters::{dimension, labels};
use crate::coxeter::{matrix_group, CoxeterDescriptor, MatrixGroup, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::fakedeg::{fake_degree, first_occurrence};

pub use poly::{Exponent, Polynomial, WeylOperator};

/// Applies `D` to `P`.
pub fn weyl_apply(d: &WeylOperator, p: &Polynomial) -> Result<Polynomial> {
    if d.nvars() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: d.nvars(), got: p.nvars() });
    }
    let mut out = Polynomial::zero(p.nvars());
    for ((alpha, beta), c) in d.terms() {
        for (gamma, c2) in p.terms() {
            if let Some((e, f)) = differentiate(gamma, alpha, beta) {
                out.add_term(e, &(c * c2) * &Scalar::from_bigint(f));
            }
        }
    }
    Ok(out)
}

/// `x^alpha d^beta x^gamma = f x^{gamma - beta + alpha}`, or `None` when zero.
fn differentiate(gamma: &[u32], alpha: &[u32], beta: &[u32]) -> Option<(Exponent, BigInt)> {
    let mut f = BigInt::from(1);
    let mut e = Vec::with_capacity(gamma.len());
    for ((&g, &a), &b) in gamma.iter().zip(alpha).zip(beta) {
        if b > g {
            return None;
        }
        for k in 0..b {
            f *= g - k;
        }
        e.push(g - b + a);
    }
    Some((e, f))
}

/// `g . D = g o D o g^{-1}`.
pub fn weyl_act_group(g: &Matrix, d: &WeylOperator) -> Result<WeylOperator> {
    let n = d.nvars();
    if !g.is_square() || g.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.rows() });
    }
    let inv_t = g.inverse().expect("group elements are invertible").transpose();
    let xs: Vec<Polynomial> = (0..n).map(|i| Polynomial::linear(&g.column(i))).collect();
    let ds: Vec<Polynomial> = (0..n).map(|i| Polynomial::linear(&inv_t.column(i))).collect();
    let subst = |forms: &[Polynomial], e: &[u32]| {
        e.iter().zip(forms).fold(Polynomial::one(n), |acc, (&k, f)| &acc * &f.pow(k))
    };
    let mut out = WeylOperator::zero(n);
    for ((alpha, beta), c) in d.terms() {
        let term = WeylOperator::from_parts(&subst(&xs, alpha), &subst(&ds, beta)).scale(c);
        out = &out + &term;
    }
    Ok(out)
}

/// The monomials of one degree in a fixed order, with the reverse index.
struct Monomials {
    list: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl Monomials {
    fn new(nvars: usize, degree: u32) -> Self {
        let mut list = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for k in (0..=left).rev() {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
        }
        if nvars == 0 {
            if degree == 0 {
                list.push(Vec::new());
            }
        } else {
            rec(0, degree, &mut cur, &mut list);
        }
        let index = list.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Monomials { list, index }
    }

    fn len(&self) -> usize {
        self.list.len()
    }
}

type SparseVec = Vec<(usize, Scalar)>;

/// Images of all degree-`d` monomials under one linear substitution, as
/// sparse columns indexed like [`Monomials`].
fn power_table(m: &Matrix, degree: u32, mons: &[Monomials]) -> Vec<Vec<SparseVec>> {
    let n = m.rows();
    let forms: Vec<SparseVec> = (0..n)
        .map(|i| (0..n).filter(|&j| !m[(j, i)].is_zero()).map(|j| (j, m[(j, i)].clone())).collect())
        .collect();
    let mut table: Vec<Vec<SparseVec>> = vec![vec![vec![(0, Scalar::one())]]];
    for d in 1..=degree as usize {
        let (lower, upper) = (&mons[d - 1], &mons[d]);
        let mut cols = Vec::with_capacity(upper.len());
        for e in &upper.list {
            let i = e.iter().position(|&k| k > 0).unwrap();
            let mut prev = e.clone();
            prev[i] -= 1;
            let base = &table[d - 1][lower.index[&prev]];
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (j, c) in base {
                for (k, c2) in &forms[i] {
                    let mut up = lower.list[*j].clone();
                    up[*k] += 1;
                    let slot = acc.entry(upper.index[&up]).or_insert_with(Scalar::zero);
                    *slot += &(c * c2);
                }
            }
            cols.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        table.push(cols);
    }
    table
}

/// One representative per left coset of the subgroup given by `sub`.
fn left_cosets(group: &MatrixGroup, sub: &[usize]) -> Vec<usize> {
    if sub.len() == group.order() {
        return vec![0];
    }
    let index: HashMap<&Matrix, usize> = group.elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for t in 0..group.order() {
        if covered[t] {
            continue;
        }
        reps.push(t);
        for &h in sub {
            covered[index[&(&group.elements[t] * &group.elements[h])]] = true;
        }
    }
    reps
}

fn is_monomial_matrix(m: &Matrix) -> bool {
    (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).count() == 1)
}

/// Reduced row echelon basis over sparse vectors.
#[derive(Default)]
struct SparseEchelon {
    rows: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl SparseEchelon {
    fn reduce(&self, mut v: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let hits: Vec<usize> = v.keys().filter(|k| self.rows.contains_key(k)).copied().collect();
        for pc in hits {
            let Some(f) = v.get(&pc).cloned() else { continue };
            for (j, y) in &self.rows[&pc] {
                let slot = v.entry(*j).or_insert_with(Scalar::zero);
                *slot -= &(&f * y);
                if slot.is_zero() {
                    v.remove(j);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: BTreeMap<usize, Scalar>) -> bool {
        let v = self.reduce(v);
        let Some((&pc, lead)) = v.iter().next() else { return false };
        let inv = lead.inv();
        let v: BTreeMap<usize, Scalar> = v.iter().map(|(&j, x)| (j, x * &inv)).collect();
        for row in self.rows.values_mut() {
            let Some(f) = row.get(&pc).cloned() else { continue };
            for (j, y) in &v {
                let slot = row.entry(*j).or_insert_with(Scalar::zero);
                *slot -= &(&f * y);
                if slot.is_zero() {
                    row.remove(j);
                }
            }
        }
        self.rows.insert(pc, v);
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn kernel(&self, dim: usize) -> Vec<Vec<Scalar>> {
        (0..dim)
            .filter(|c| !self.rows.contains_key(c))
            .map(|f| {
                let mut v = vec![Scalar::zero(); dim];
                v[f] = Scalar::one();
                for (&pc, row) in &self.rows {
                    if let Some(x) = row.get(&f) {
                        v[pc] = -x;
                    }
                }
                v
            })
            .collect()
    }
}

/// Precomputed actions of every group element on monomials in `x` and `d`
/// up to a fixed degree.
struct Engine {
    nvars: usize,
    mons: Vec<Monomials>,
    x_tables: Vec<Vec<Vec<SparseVec>>>,
    d_tables: Vec<Vec<Vec<SparseVec>>>,
    monomial_subgroup: Vec<usize>,
    /// representatives `t` of the left cosets `tH` of the monomial subgroup
    cosets: Vec<usize>,
}

impl Engine {
    fn new(group: &MatrixGroup, degree: u32) -> Self {
        let n = group.dim;
        let mons: Vec<Monomials> = (0..=degree).map(|d| Monomials::new(n, d)).collect();
        let tables: Vec<_> = group
            .elements
            .par_iter()
            .map(|g| {
                let inv_t = g.inverse().expect("group elements are invertible").transpose();
                (power_table(g, degree, &mons), power_table(&inv_t, degree, &mons))
            })
            .collect();
        let (x_tables, d_tables) = tables.into_iter().unzip();
        let monomial_subgroup: Vec<usize> =
            group.elements.iter().enumerate().filter(|(_, g)| is_monomial_matrix(g)).map(|(i, _)| i).collect();
        let cosets = left_cosets(group, &monomial_subgroup);
        Engine { nvars: n, mons, x_tables, d_tables, monomial_subgroup, cosets }
    }

    /// Basis of the invariants in the span of `x^alpha d^beta`,
    /// `|alpha| = p`, `|beta| = q`, as sparse vectors over pairs `a * N_q + b`.
    fn invariants(&self, p: usize, q: usize) -> Vec<BTreeMap<usize, Scalar>> {
        let nq = self.mons[q].len();
        let total = self.mons[p].len() * nq;
        // With H the monomial subgroup, the group average of m is
        // sum_t t (sum_h h m): it is constant on H-orbits up to a scalar, and
        // vanishes outright when the inner sum does.
        let mut seen = vec![false; total];
        let mut inner_sums = Vec::new();
        for idx in 0..total {
            if seen[idx] {
                continue;
            }
            let mut acc: HashMap<usize, Scalar> = HashMap::new();
            for &h in &self.monomial_subgroup {
                let (a, c1) = &self.x_tables[h][p][idx / nq][0];
                let (b, c2) = &self.d_tables[h][q][idx % nq][0];
                seen[a * nq + b] = true;
                *acc.entry(a * nq + b).or_insert_with(Scalar::zero) += &(c1 * c2);
            }
            let acc: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !acc.is_empty() {
                inner_sums.push(acc);
            }
        }
        let averaged: Vec<BTreeMap<usize, Scalar>> = inner_sums
            .par_iter()
            .map(|inner| {
                let mut acc: HashMap<usize, Scalar> = HashMap::new();
                for &t in &self.cosets {
                    let (xt, dt) = (&self.x_tables[t][p], &self.d_tables[t][q]);
                    for (idx, c) in inner {
                        for (i, c1) in &xt[idx / nq] {
                            let c1 = c * c1;
                            for (j, c2) in &dt[idx % nq] {
                                let slot = acc.entry(i * nq + j).or_insert_with(Scalar::zero);
                                *slot += &(&c1 * c2);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        let mut echelon = SparseEchelon::default();
        averaged.into_iter().filter(|v| !v.is_empty() && echelon.insert(v.clone())).collect()
    }

    fn to_operator(&self, p: usize, q: usize, v: &BTreeMap<usize, Scalar>) -> WeylOperator {
        let nq = self.mons[q].len();
        let mut op = WeylOperator::zero(self.nvars);
        for (&idx, c) in v {
            op.add_term(self.mons[p].list[idx / nq].clone(), self.mons[q].list[idx % nq].clone(), c.clone());
        }
        op
    }

    /// Matrix rows of the operator restricted to degree `m`, as sparse
    /// vectors over the degree-`m` monomials.
    fn operator_rows(&self, p: usize, q: usize, v: &BTreeMap<usize, Scalar>, m: usize) -> Vec<BTreeMap<usize, Scalar>> {
        let nq = self.mons[q].len();
        let mut rows: HashMap<Exponent, BTreeMap<usize, Scalar>> = HashMap::new();
        for (col, gamma) in self.mons[m].list.iter().enumerate() {
            for (&idx, c) in v {
                let (alpha, beta) = (&self.mons[p].list[idx / nq], &self.mons[q].list[idx % nq]);
                if let Some((e, f)) = differentiate(gamma, alpha, beta) {
                    let slot = rows.entry(e).or_default().entry(col).or_insert_with(Scalar::zero);
                    *slot += &(c * &Scalar::from_bigint(f));
                }
            }
        }
        rows.into_values()
            .map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect::<BTreeMap<_, _>>())
            .filter(|r| !r.is_empty())
            .collect()
    }
}

/// A basis of the `G`-invariant operators `x^alpha d^beta` with
/// `|alpha| = p`, `|beta| = q`.
pub fn invariant_operator_basis(g: &CoxeterDescriptor, p: usize, q: usize) -> Result<Vec<WeylOperator>> {
    invariant_operator_basis_group(&matrix_group(g, DEFAULT_CAP)?, p, q)
}

pub fn invariant_operator_basis_group(group: &MatrixGroup, p: usize, q: usize) -> Result<Vec<WeylOperator>> {
    let engine = Engine::new(group, p.max(q) as u32);
    Ok(engine.invariants(p, q).iter().map(|v| engine.to_operator(p, q, v)).collect())
}

/// Invariant bases for every bidegree `(p, q)` with `p, q <= bound`,
/// sharing one set of group tables.
pub fn invariant_operator_bases(g: &CoxeterDescriptor, bound: usize) -> Result<BTreeMap<(usize, usize), Vec<WeylOperator>>> {
    let group = matrix_group(g, DEFAULT_CAP)?;
    let engine = Engine::new(&group, bound as u32);
    let pairs: Vec<(usize, usize)> = (0..=bound).flat_map(|p| (0..=bound).map(move |q| (p, q))).collect();
    Ok(pairs
        .into_par_iter()
        .map(|(p, q)| ((p, q), engine.invariants(p, q).iter().map(|v| engine.to_operator(p, q, v)).collect()))
        .collect())
}

/// Homogeneous polynomials grouped by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedBasis {
    pub pieces: BTreeMap<usize, Vec<Polynomial>>,
}

impl GradedBasis {
    /// Dimensions of the nonzero pieces.
    pub fn dims(&self) -> BTreeMap<usize, u64> {
        self.pieces.iter().filter(|(_, v)| !v.is_empty()).map(|(&d, v)| (d, v.len() as u64)).collect()
    }

    pub fn total(&self) -> u64 {
        self.pieces.values().map(|v| v.len() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.pieces.iter().flat_map(|(&d, v)| v.iter().map(move |p| (d, p)))
    }

    /// Whether both bases span the same subspace in every degree.
    pub fn same_span(&self, other: &GradedBasis) -> bool {
        if self.dims() != other.dims() {
            return false;
        }
        let nvars = self.iter().chain(other.iter()).map(|(_, p)| p.nvars()).next().unwrap_or(0);
        self.pieces.iter().filter(|(_, v)| !v.is_empty()).all(|(&d, mine)| {
            let mons = Monomials::new(nvars, d as u32);
            let coords = |p: &Polynomial| {
                let mut v = vec![Scalar::zero(); mons.len()];
                for (e, c) in p.terms() {
                    v[mons.index[e]] = c.clone();
                }
                v
            };
            let mut basis = EchelonBasis::new();
            for p in mine {
                basis.insert(coords(p));
            }
            other.pieces.get(&d).is_some_and(|theirs| theirs.iter().all(|p| basis.contains(&coords(p))))
        })
    }
}

/// The joint kernel together with the operators that cut it out.
#[derive(Clone, Debug)]
pub struct TruncatedModel {
    pub basis: GradedBasis,
    /// Invariant operators used, keyed by bidegree `(p, q)`.
    pub operators: BTreeMap<(usize, usize), Vec<WeylOperator>>,
}

impl TruncatedModel {
    /// `(p, q, count)` for every bidegree used.
    pub fn budget(&self) -> Vec<(usize, usize, usize)> {
        self.operators.iter().map(|(&(p, q), v)| (p, q, v.len())).collect()
    }
}

/// For every `m <= degree_bound`, the subspace of degree-`m` polynomials
/// killed by all invariant operators of bidegree `(p, q)` with
/// `p < q <= degree_bound` and `q - p <= drop_bound`.
pub fn truncated_model(g: &CoxeterDescriptor, degree_bound: usize, drop_bound: usize) -> Result<TruncatedModel> {
    truncated_model_group(&matrix_group(g, DEFAULT_CAP)?, degree_bound, drop_bound)
}

pub fn truncated_model_group(group: &MatrixGroup, degree_bound: usize, drop_bound: usize) -> Result<TruncatedModel> {
    let engine = Engine::new(group, degree_bound as u32);
    let pairs: Vec<(usize, usize)> = (1..=degree_bound)
        .flat_map(|q| (q.saturating_sub(drop_bound)..q).map(move |p| (p, q)))
        .collect();
    let invariants: Vec<((usize, usize), Vec<BTreeMap<usize, Scalar>>)> =
        pairs.par_iter().map(|&(p, q)| ((p, q), engine.invariants(p, q))).collect();
    let pieces: Vec<(usize, Vec<Polynomial>)> = (0..=degree_bound)
        .into_par_iter()
        .map(|m| {
            let mut echelon = SparseEchelon::default();
            let dim = engine.mons[m].len();
            'ops: for ((p, q), ops) in &invariants {
                if *q > m {
                    continue;
                }
                for v in ops {
                    for row in engine.operator_rows(*p, *q, v, m) {
                        echelon.insert(row);
                        if echelon.len() == dim {
                            break 'ops;
                        }
                    }
                }
            }
            let kernel = kernel_bareiss(&echelon, dim);
            let polys = kernel
                .into_iter()
                .map(|v| {
                    let mut poly = Polynomial::zero(engine.nvars);
                    for (i, c) in v.into_iter().enumerate() {
                        poly.add_term(engine.mons[m].list[i].clone(), c);
                    }
                    poly
                })
                .collect();
            (m, polys)
        })
        .collect();
    let operators = invariants
        .iter()
        .map(|((p, q), ops)| ((*p, *q), ops.iter().map(|v| engine.to_operator(*p, *q, v)).collect()))
        .collect();
    Ok(TruncatedModel { basis: GradedBasis { pieces: pieces.into_iter().collect() }, operators })
}

/// Kernel of the span of the echelon rows, recomputed by fraction-free
/// elimination on the independent rows.
fn kernel_bareiss(echelon: &SparseEchelon, dim: usize) -> Vec<Vec<Scalar>> {
    if echelon.len() == 0 {
        return echelon.kernel(dim);
    }
    let rows: Vec<Vec<Scalar>> = echelon
        .rows
        .values()
        .map(|r| {
            let mut v = vec![Scalar::zero(); dim];
            for (&j, c) in r {
                v[j] = c.clone();
            }
            v
        })
        .collect();
    Matrix::from_rows(rows).kernel()
}

/// Graded dimensions of the model assembled from first occurrences: each
/// irreducible `U` contributes `multiplicity * dim U` at degree `p(U)`.
pub fn model_via_theorem2(g: &CoxeterDescriptor) -> Result<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    for l in labels(g) {
        let (p, mult) = first_occurrence(&fake_degree(g, &l)?)?;
        let contribution = mult * dimension(g, &l)?;
        *out.entry(p).or_insert(0) += u64::try_from(contribution).expect("dimension fits in u64");
    }
    Ok(out)
}

/// `sum_{a + b = d} f(a) g(b)`.
pub fn convolve(f: &BTreeMap<usize, u64>, g: &BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for (a, x) in f {
        for (b, y) in g {
            *out.entry(a + b).or_insert(0) += x * y;
        }
    }
    out
}

/// The explicit model of `I2(n)` in the coordinates `(z, zbar)`.
#[derive(Clone, Debug)]
pub struct DihedralModel {
    pub n: usize,
    pub basis: GradedBasis,
    /// `d dbar` and `z^{n-m} dbar^m + zbar^{n-m} d^m`, `m = floor(n/2) + 1`.
    pub operators: Vec<WeylOperator>,
    /// Whether every operator kills every basis element.
    pub annihilated: bool,
}

pub fn dihedral_model_basis(n: usize) -> Result<DihedralModel> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange { family: "I2".into(), param: n });
    }
    let half = n / 2;
    let z = |a: u32, b: u32| Polynomial::monomial(vec![a, b], Scalar::one());
    let mut pieces = BTreeMap::new();
    pieces.insert(0, vec![z(0, 0)]);
    for k in 1..=half as u32 {
        pieces.insert(k as usize, vec![z(k, 0), z(0, k)]);
    }
    pieces.insert(n, vec![&z(n as u32, 0) - &z(0, n as u32)]);
    let basis = GradedBasis { pieces };
    let m = half as u32 + 1;
    let k = n as u32 - m;
    let laplacian = WeylOperator::monomial(vec![0, 0], vec![1, 1], Scalar::one());
    let mut lowering = WeylOperator::monomial(vec![k, 0], vec![0, m], Scalar::one());
    lowering.add_term(vec![0, k], vec![m, 0], Scalar::one());
    let operators = vec![laplacian, lowering];
    let mut annihilated = true;
    for op in &operators {
        for (_, p) in basis.iter() {
            annihilated &= weyl_apply(op, p)?.is_zero();
        }
    }
    Ok(DihedralModel { n, basis, operators, annihilated })
}

/// Comparison of the kernel on `V1 + V2` with the convolution of the
/// factors' graded dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductModelReport {
    pub expected: BTreeMap<usize, u64>,
    pub computed: BTreeMap<usize, u64>,
}

impl ProductModelReport {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

pub fn product_model_check(g1: &CoxeterDescriptor, g2: &CoxeterDescriptor, cap: usize) -> Result<ProductModelReport> {
    let expected = convolve(&model_via_theorem2(g1)?, &model_via_theorem2(g2)?);
    let group = matrix_group(g1, cap)?.direct_product(&matrix_group(g2, cap)?, cap)?;
    let bound = expected.keys().copied().max().unwrap_or(0);
    let computed = truncated_model_group(&group, bound, bound)?.basis.dims();
    Ok(ProductModelReport { expected, computed })
}
