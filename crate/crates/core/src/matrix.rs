//! Dense matrices over exact rationals.
//!
//! Entries are stored row-major as [`Rational`] values (arbitrary-precision
//! fractions kept in lowest terms). Zero-dimension matrices are legal and
//! behave as the empty blocks of block-matrix algebra: a `0 x n` times `n x 0`
//! product is `0 x 0`, an `m x 0` times `0 x n` product is the `m x n` zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact fraction with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `-?[0-9]+(/[1-9][0-9]*)?` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = num.parse().ok()?;
    let denom: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            let bytes = d.as_bytes();
            if bytes.is_empty() || !bytes.iter().all(u8::is_ascii_digit) || bytes[0] == b'0' {
                return None;
            }
            d.parse().ok()?
        }
    };
    Some(Rational::new(numer, denom))
}

/// Canonical text form: `n` for integers, `n/d` otherwise, always in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub matrix: RealMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Null-space basis as the columns of a `cols x (cols - rank)` matrix.
    /// Column `j` is the standard vector for the `j`-th free variable.
    pub fn null_space(&self) -> RealMatrix {
        let n = self.matrix.cols();
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut basis = RealMatrix::zeros(n, free.len());
        for (j, &f) in free.iter().enumerate() {
            basis[(f, j)] = Rational::one();
            for (i, &p) in self.pivots.iter().enumerate() {
                basis[(p, j)] = -self.matrix[(i, f)].clone();
            }
        }
        basis
    }
}

/// Solution set `{ particular + null_space * c }` of a real linear system.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSolution {
    pub particular: RealMatrix,
    pub null_space: RealMatrix,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RealMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RealMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    /// Column vector from integers.
    pub fn column_i64(values: &[i64]) -> Self {
        Self::from_fn(values.len(), 1, |i, _| int(values[i]))
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn column(&self, j: usize) -> RealMatrix {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn transpose(&self) -> RealMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Rational) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// Copy of the block with rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RealMatrix {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Selected columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RealMatrix {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn hstack(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RealMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2x2(a: &RealMatrix, b: &RealMatrix, c: &RealMatrix, d: &RealMatrix) -> RealMatrix {
        a.hstack(b).vstack(&c.hstack(d))
    }

    /// `diag(a, b)` with zero off-diagonal blocks.
    pub fn block_diag(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
        Self::block2x2(
            a,
            &Self::zeros(a.rows, b.cols),
            &Self::zeros(b.rows, a.cols),
            b,
        )
    }

    /// Shape-checked product.
    pub fn try_mul(&self, rhs: &RealMatrix) -> Option<RealMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Some(out)
    }

    /// `self^e` for a square matrix; `self^0 = I`.
    pub fn pow(&self, e: usize) -> RealMatrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Gauss-Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row; no magnitude pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    let delta = &factor * &m[(row, j)];
                    m[(r, j)] -= delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the null space as columns.
    pub fn null_space(&self) -> RealMatrix {
        self.rref().null_space()
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_space(&self) -> RealMatrix {
        self.select_columns(&self.rref().pivots)
    }

    /// Exact inverse, or `None` when singular or non-square.
    pub fn inverse(&self) -> Option<RealMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let rref = self.hstack(&Self::identity(n)).rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rref.matrix.submatrix(0, n, n, 2 * n))
    }

    /// Solves `self * x = rhs` (any number of right-hand columns, treated
    /// jointly). Returns `None` when inconsistent.
    pub fn solve(&self, rhs: &RealMatrix) -> Option<RealSolution> {
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let n = self.cols;
        let aug = self.hstack(rhs).rref();
        if aug.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut particular = Self::zeros(n, rhs.cols);
        for (i, &p) in aug.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                particular[(p, j)] = aug.matrix[(i, n + j)].clone();
            }
        }
        let coeff = Rref {
            matrix: aug.matrix.submatrix(0, self.rows, 0, n),
            pivots: aug.pivots,
        };
        Some(RealSolution {
            particular,
            null_space: coeff.null_space(),
        })
    }

    /// True when every column of `other` lies in the column space of `self`.
    pub fn column_space_contains(&self, other: &RealMatrix) -> bool {
        assert_eq!(self.rows, other.rows, "column space row mismatch");
        self.hstack(other).rank() == self.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn max_abs_numer_denom(&self) -> (BigInt, BigInt) {
        let mut n = BigInt::zero();
        let mut d = BigInt::one();
        for v in &self.data {
            n = n.max(v.numer().abs());
            d = d.max(v.denom().clone());
        }
        (n, d)
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a RealMatrix> for &'a RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &'a RealMatrix) -> RealMatrix {
        self.try_mul(rhs).unwrap_or_else(|| {
            panic!(
                "matrix product shape mismatch: {:?} * {:?}",
                self.shape(),
                rhs.shape()
            )
        })
    }
}

impl<'a> Add<&'a RealMatrix> for &'a RealMatrix {
    type Output = RealMatrix;
    fn add(self, rhs: &'a RealMatrix) -> RealMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a RealMatrix> for &'a RealMatrix {
    type Output = RealMatrix;
    fn sub(self, rhs: &'a RealMatrix) -> RealMatrix {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "matrix difference shape mismatch"
        );
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RealMatrix {
    type Output = RealMatrix;
    fn neg(self) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")?;
        if self.rows == 0 || self.cols == 0 {
            write!(f, "({}x{})", self.rows, self.cols)?;
        }
        Ok(())
    }
}
