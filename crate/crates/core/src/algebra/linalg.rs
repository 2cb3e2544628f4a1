//! Dense matrices over [`Scalar`] and exact elimination.
//!
//! Row reduction is fraction-free (Bareiss): every update is a 2x2 minor
//! divided exactly by the previous pivot, so integral input stays integral
//! until the final back-substitution.

use std::fmt;
use std::ops::Mul;

use super::scalar::Scalar;
use super::series::ScalarPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn pow(&self, k: u32) -> Matrix {
        (0..k).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }

    /// Multiplicative order, searching up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pinv = a[(c, c)].inv();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &pinv;
                inv[(c, j)] = &inv[(c, j)] * &pinv;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let da = &f * &a[(c, j)];
                    a[(r, j)] -= &da;
                    let di = &f * &inv[(c, j)];
                    inv[(r, j)] -= &di;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `det(1 - t M)` via Faddeev-LeVerrier.
    pub fn det_one_minus_t(&self) -> ScalarPoly {
        assert!(self.is_square());
        let n = self.rows;
        // characteristic polynomial det(x - M) = sum c_k x^{n-k}, c_0 = 1;
        // det(1 - tM) = sum c_k t^k.
        let mut coeffs = vec![Scalar::one()];
        let mut m_k = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut prev = m_k.clone();
            for i in 0..n {
                prev[(i, i)] += &coeffs[k - 1];
            }
            m_k = self * &prev;
            let c = -(&m_k.trace() / &Scalar::from_int(k as i64));
            coeffs.push(c);
        }
        ScalarPoly::new(coeffs)
    }

    pub fn rank(&self) -> usize {
        row_echelon(self.clone()).pivots.len()
    }

    /// Basis of `{ v : M v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        kernel_of_echelon(&row_echelon(self.clone()), self.cols)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += &prod;
                    }
                }
            }
        }
        out
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Fraction-free (Bareiss) forward elimination.
pub fn row_echelon(mut m: Matrix) -> Echelon {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut prev = Scalar::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let piv = m[(r, c)].clone();
        for i in r + 1..rows {
            let lead = m[(i, c)].clone();
            for j in c + 1..cols {
                let a = &piv * &m[(i, j)];
                let b = if lead.is_zero() { Scalar::zero() } else { &lead * &m[(r, j)] };
                m[(i, j)] = &(&a - &b) / &prev;
            }
            m[(i, c)] = Scalar::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: m, pivots }
}

fn kernel_of_echelon(e: &Echelon, cols: usize) -> Vec<Vec<Scalar>> {
    let m = &e.matrix;
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &pc) in e.pivots.iter().enumerate().rev() {
                let mut acc = Scalar::zero();
                for j in pc + 1..cols {
                    if !m[(r, j)].is_zero() && !v[j].is_zero() {
                        acc += &(&m[(r, j)] * &v[j]);
                    }
                }
                v[pc] = -(&acc / &m[(r, pc)]);
            }
            v
        })
        .collect()
}

/// Incrementally maintained reduced row echelon basis of a subspace of
/// `Scalar^dim`.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        self.rows.push((pc, v));
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<Scalar>> {
        self.rows.iter().map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for i in 0..2 {
                let s: Scalar = (0..3).map(|j| &m[(i, j)] * &v[j]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn bareiss_stays_integral() {
        let m = Matrix::from_ints(&[&[2, 3, 1], &[4, 1, 5], &[6, 2, 2]]);
        let e = row_echelon(m);
        assert_eq!(e.pivots, vec![0, 1, 2]);
        for i in 0..3 {
            for j in 0..3 {
                assert!(e.matrix[(i, j)].as_integer().is_some());
            }
        }
        // last pivot of Bareiss is the determinant (up to row swaps)
        assert_eq!(e.matrix[(2, 2)], Scalar::from_int(52));
    }

    #[test]
    fn inverse_and_det_poly() {
        let m = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.inverse().unwrap(), m);
        assert_eq!(m.det_one_minus_t(), ScalarPoly::from_ints(&[1, 0, -1]));
        let r = Matrix::from_ints(&[&[0, -1], &[1, -1]]);
        assert_eq!(r.order(10), Some(3));
        assert_eq!(r.det_one_minus_t(), ScalarPoly::from_ints(&[1, 1, 1]));
        assert!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn echelon_basis_span() {
        let mut b = EchelonBasis::new();
        let v = |xs: &[i64]| xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
        assert!(b.insert(v(&[1, 1, 0])));
        assert!(b.insert(v(&[0, 1, 1])));
        assert!(!b.insert(v(&[1, 2, 1])));
        assert!(b.contains(&v(&[2, 0, -2])));
        assert!(!b.contains(&v(&[0, 0, 1])));
        assert_eq!(b.len(), 2);
    }
}
