//! Dense matrices over the rationals and the exact solvers built on them.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::reduce::{RowReducer, SparseRow};
use super::{Poly, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::scalar(n, Scalar::one())
    }

    pub fn scalar(n: usize, s: Scalar) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zero(entries.len(), entries.len());
        for (i, s) in entries.iter().enumerate() {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn column(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Matrix::new(n, 1, entries).expect("column shape")
    }

    /// Assembles a matrix from a grid of blocks. Block rows must agree in
    /// height and block columns in width.
    pub fn from_blocks(blocks: &[Vec<Matrix>]) -> Result<Self> {
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        for (bi, brow) in blocks.iter().enumerate() {
            if brow.len() != widths.len() {
                return Err(Error::Dimension("ragged block grid".into()));
            }
            for (bj, b) in brow.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::Dimension(format!(
                        "block ({bi},{bj}) has wrong shape"
                    )));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Matrix::zero(rows, cols);
        let mut r0 = 0;
        for (bi, brow) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in brow.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// Block-diagonal matrix with `copies` copies of `self`.
    pub fn block_diag_repeat(&self, copies: usize) -> Matrix {
        let grid: Vec<Vec<Matrix>> = (0..copies)
            .map(|i| {
                (0..copies)
                    .map(|j| {
                        if i == j {
                            self.clone()
                        } else {
                            Matrix::zero(self.rows, self.cols)
                        }
                    })
                    .collect()
            })
            .collect();
        Matrix::from_blocks(&grid).expect("uniform blocks")
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// `Some(s)` when the matrix is `s·I`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Scalar::zero());
        }
        let s = self[(0, 0)].clone();
        (*self == Matrix::scalar(self.rows, s.clone())).then_some(s)
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i + 1)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `self + s·I`
    pub fn shift(&self, s: &Scalar) -> Matrix {
        assert!(self.is_square(), "shift of a non-square matrix");
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] += s;
        }
        out
    }

    pub fn shift_int(&self, s: i64) -> Matrix {
        self.shift(&Scalar::from_int(s))
    }

    /// Exact product; errors on shape mismatch.
    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "shape {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn pow(&self, exp: u32) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self * other == other * self
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.reducer().rank()
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.cols);
        for i in 0..self.rows {
            let row: SparseRow = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            r.push(row);
        }
        r
    }

    /// An exact basis of `{v : self·v = 0}`, returned as column vectors.
    pub fn nullspace(&self) -> Vec<Matrix> {
        self.reducer()
            .nullspace()
            .into_iter()
            .map(Matrix::column)
            .collect()
    }

    /// Solves `self·x = b` for a single right-hand side column.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let mut r = RowReducer::new(self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            let mut row: SparseRow = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            if !bi.is_zero() {
                row.insert(self.cols, -bi);
            }
            r.push(row);
        }
        Ok(r.particular_solution())
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Err(Error::Singular {
                    nullity: n - self.rank(),
                });
            };
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pinv = a[(col, col)].recip().expect("nonzero pivot");
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.sub_row_multiple(r, col, &f);
                    inv.sub_row_multiple(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for j in 0..self.cols {
            self.data[r * self.cols + j] *= s;
        }
    }

    // row[target] -= f * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &Scalar) {
        for j in 0..self.cols {
            let delta = f * &self.data[source * self.cols + j];
            if !delta.is_zero() {
                self.data[target * self.cols + j] -= &delta;
            }
        }
    }

    /// Monic characteristic polynomial `det(λI - A)`, via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let h = self.hessenberg();
        // p[k] is the characteristic polynomial of the leading k×k block,
        // stored as coefficients from the constant term up.
        let mut p: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
        for k in 0..n {
            let mut next = vec![Scalar::zero(); k + 2];
            for (i, c) in p[k].iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &(&h[(k, k)] * c);
            }
            let mut sub = Scalar::one();
            for i in (0..k).rev() {
                sub = &sub * &h[(i + 1, i)];
                if sub.is_zero() {
                    break;
                }
                let factor = &h[(i, k)] * &sub;
                for (d, c) in p[i].iter().enumerate() {
                    next[d] -= &(&factor * c);
                }
            }
            p.push(next);
        }
        Ok(Poly::new(p.pop().expect("nonempty")))
    }

    /// A similar upper Hessenberg matrix, by elimination with row and
    /// column swaps.
    fn hessenberg(&self) -> Matrix {
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(pivot) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if pivot != m {
                h.swap_rows(pivot, m);
                for r in 0..n {
                    h.data.swap(r * n + pivot, r * n + m);
                }
            }
            let inv = h[(m, m - 1)].recip().expect("nonzero pivot");
            for i in m + 1..n {
                if h[(i, m - 1)].is_zero() {
                    continue;
                }
                let t = &h[(i, m - 1)] * &inv;
                for c in 0..n {
                    let delta = &t * &h[(m, c)];
                    h[(i, c)] -= &delta;
                }
                for r in 0..n {
                    let delta = &t * &h[(r, i)];
                    h[(r, m)] += &delta;
                }
            }
        }
        h
    }

    /// True iff `(A - μI)^dim = 0`, i.e. μ is the only eigenvalue.
    pub fn has_single_eigenvalue(&self, mu: &Scalar) -> bool {
        self.is_square() && self.shift(&-mu).is_nilpotent()
    }

    /// The square root of an operator with a single eigenvalue `r²`, taken on
    /// the branch whose eigenvalue is `r`. The result is a polynomial in
    /// `self`: `r · Σ_k binom(1/2, k) N^k` with `N = self/r² - I` nilpotent.
    pub fn sqrt_single_eigenvalue(&self, root: &Scalar) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "square root of a non-square matrix".into(),
            ));
        }
        if root.is_zero() {
            return Err(Error::NotInvertible);
        }
        let mu = root * root;
        if !self.has_single_eigenvalue(&mu) {
            return Err(Error::EigenvalueMismatch {
                expected: mu.to_string(),
            });
        }
        let n = self.rows;
        let nil = self.scale(&mu.recip().expect("nonzero")).shift_int(-1);
        let half = Scalar::half();
        let mut term = Matrix::identity(n);
        let mut acc = Matrix::zero(n, n);
        for k in 0..n.max(1) as u32 {
            acc = &acc + &term.scale(&half.binomial(k));
            term = &term * &nil;
        }
        Ok(acc.scale(root))
    }

    /// Square root on the branch with the nonnegative eigenvalue. Fails when
    /// the single eigenvalue has no rational square root.
    pub fn principal_sqrt(&self) -> Result<Matrix> {
        if !self.is_square() || self.rows == 0 {
            return Err(Error::Dimension(
                "square root needs a nonempty square matrix".into(),
            ));
        }
        let mu = self.trace() / Scalar::from_int(self.rows as i64);
        if !self.has_single_eigenvalue(&mu) {
            return Err(Error::EigenvalueMismatch {
                expected: mu.to_string(),
            });
        }
        if mu.is_zero() {
            return Err(Error::NotInvertible);
        }
        let root = mu.sqrt().ok_or_else(|| {
            Error::UnsupportedParameter(format!("eigenvalue {mu} has no rational square root"))
        })?;
        self.sqrt_single_eigenvalue(&root)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mat_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn products() {
        let i2 = Matrix::identity(2);
        assert_eq!(i2.mat_mul(&i2).unwrap(), i2);
        let n = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(n.mat_mul(&n).unwrap().is_zero());
        let a = Matrix::diagonal(&[q(1, 3), q(1, 5)]);
        let b = Matrix::from_ints(&[&[3, 0], &[0, 5]]);
        // independent scalar arithmetic: (1/3)*3 = 1, (1/5)*5 = 1
        assert_eq!(&q(1, 3) * &Scalar::from_int(3), Scalar::one());
        assert_eq!(a.mat_mul(&b).unwrap(), i2);
        assert!(matches!(
            Matrix::zero(2, 3).mat_mul(&Matrix::zero(2, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn inverses() {
        assert_eq!(Matrix::identity(3).inverse().unwrap(), Matrix::identity(3));
        let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, Matrix::from_ints(&[&[1, -1], &[0, 1]]));
        assert!((&a * &inv).is_identity() && (&inv * &a).is_identity());
        assert_eq!(
            Matrix::zero(2, 2).inverse(),
            Err(Error::Singular { nullity: 2 })
        );
        assert_eq!(
            Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::Singular { nullity: 1 })
        );
    }

    #[test]
    fn nullspaces() {
        assert_eq!(Matrix::zero(2, 2).nullspace().len(), 2);
        assert!(Matrix::identity(2).nullspace().is_empty());
        let a = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!((&a * &ns[0]).is_zero());
        // spanned by (2, -1)
        let v = &ns[0];
        assert_eq!(
            &v[(0, 0)] * &Scalar::from_int(-1),
            &v[(1, 0)] * &Scalar::from_int(2)
        );
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(
            Matrix::identity(2).charpoly().unwrap(),
            Poly::from_ints(&[1, -2, 1])
        );
        assert_eq!(
            Matrix::from_ints(&[&[0, 1], &[0, 0]]).charpoly().unwrap(),
            Poly::from_ints(&[0, 0, 1])
        );
        // det [[λ, -1], [1, λ]] = λ² + 1
        assert_eq!(
            Matrix::from_ints(&[&[0, 1], &[-1, 0]]).charpoly().unwrap(),
            Poly::from_ints(&[1, 0, 1])
        );
        assert!(Matrix::zero(2, 3).charpoly().is_err());
    }

    #[test]
    fn single_eigenvalue() {
        assert!(Matrix::zero(2, 2).has_single_eigenvalue(&Scalar::zero()));
        let j = Matrix::from_rows(vec![vec![q(5, 6), q(1, 1)], vec![q(0, 1), q(5, 6)]]).unwrap();
        assert!(j.has_single_eigenvalue(&q(5, 6)));
        assert!(!Matrix::identity(2).has_single_eigenvalue(&Scalar::zero()));
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            Matrix::identity(2)
                .sqrt_single_eigenvalue(&Scalar::one())
                .unwrap(),
            Matrix::identity(2)
        );
        let a = Matrix::from_ints(&[&[4, 1], &[0, 4]]);
        let plus = a.sqrt_single_eigenvalue(&Scalar::from_int(2)).unwrap();
        assert_eq!(
            plus,
            Matrix::from_rows(vec![vec![q(2, 1), q(1, 4)], vec![q(0, 1), q(2, 1)]]).unwrap()
        );
        assert_eq!(&plus * &plus, a);
        let minus = a.sqrt_single_eigenvalue(&Scalar::from_int(-2)).unwrap();
        assert_eq!(
            minus,
            Matrix::from_rows(vec![vec![q(-2, 1), q(-1, 4)], vec![q(0, 1), q(-2, 1)]]).unwrap()
        );
        assert_eq!(&minus * &minus, a);
        assert_eq!(
            Matrix::zero(2, 2).sqrt_single_eigenvalue(&Scalar::zero()),
            Err(Error::NotInvertible)
        );
        assert!(matches!(
            Matrix::scalar(2, Scalar::from_int(2)).principal_sqrt(),
            Err(Error::UnsupportedParameter(_))
        ));
        assert!(matches!(
            a.sqrt_single_eigenvalue(&Scalar::from_int(3)),
            Err(Error::EigenvalueMismatch { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let m = Matrix::from_rows(vec![vec![q(1, 3), q(2, 1)]]).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["1/3","2"]]"#);
        assert!(serde_json::from_str::<Matrix>(r#"[["1"],["1","2"]]"#).is_err());
    }
}
