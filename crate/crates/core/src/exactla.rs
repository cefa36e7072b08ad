//! Exact dense linear algebra over ℚ and GF(p).
//!
//! Every matrix carries its [`Field`]. Scalars are [`BigRational`] values kept in
//! canonical form: lowest terms over ℚ, integer residues in `[0, p)` over GF(p).
//! Shape mismatches are programming errors and panic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p), rejecting non-primes.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.canon(Scalar::from_integer(BigInt::from(v)))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    pub fn reduce(&self, x: Scalar) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(x),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let den = x.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::NotReducible { value: x.to_string(), p: *p });
                }
                let num = x.numer().mod_floor(&pb);
                let inv = den.modpow(&(&pb - 2u32), &pb);
                Ok(Scalar::from_integer((num * inv).mod_floor(&pb)))
            }
        }
    }

    fn canon(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                debug_assert!(x.is_integer());
                Scalar::from_integer(x.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.canon(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.canon(-a)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                Scalar::from_integer(a.to_integer().modpow(&(&pb - 2u32), &pb))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Result of [`Mat::solve`]: one particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Builds a matrix entry by entry; entries are reduced into the field.
    ///
    /// Panics if an entry has no image in the field (a denominator divisible by p).
    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(field.reduce(f(r, c)).expect("entry not representable in field"));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Matrix from integer rows. Panics on ragged input.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(field, r, c, |i, j| Scalar::from_integer(BigInt::from(rows[i][j])))
    }

    /// Matrix from rows of rationals, checking shape and field membership.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Mat> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::InvalidModule(format!("row of length {} where {} expected", row.len(), cols)));
            }
            for x in row {
                data.push(field.reduce(x)?);
            }
        }
        Ok(Mat { field, rows: r, cols, data })
    }

    /// Matrix whose columns are the given vectors (of height `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        assert!(columns.iter().all(|c| c.len() == rows), "column height mismatch");
        Mat::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Mat {
        Mat::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    /// Sets one entry, reducing it into the field.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = self.field.reduce(v).expect("entry not representable in field");
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Mat, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let f = self.field;
        let s = f.reduce(s.clone()).expect("scalar not representable in field");
        let data = self.data.iter().map(|a| f.mul(a, &s)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation; all blocks need the same height.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Mat]) -> Mat {
        assert!(blocks.iter().all(|b| b.rows == rows && b.field == field), "hstack mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks need the same width.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Mat]) -> Mat {
        assert!(blocks.iter().all(|b| b.cols == cols && b.field == field), "vstack mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            out.paste(off, 0, b);
            off += b.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.data[r * block.cols + c].clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        Mat::from_fn(self.field, rows.len(), cols.len(), |r, c| self.get(rows.start + r, cols.start + c).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.data[r * m.cols + col].is_zero()) else {
                continue;
            };
            if sel != prow {
                for c in 0..m.cols {
                    m.data.swap(sel * m.cols + c, prow * m.cols + c);
                }
            }
            let inv = f.inv(&m.data[prow * m.cols + col]);
            for c in col..m.cols {
                let idx = prow * m.cols + c;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.data[r * m.cols + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = &m.data[prow * m.cols + c];
                    if p.is_zero() {
                        continue;
                    }
                    let t = f.mul(&factor, p);
                    let idx = r * m.cols + c;
                    m.data[idx] = f.sub(&m.data[idx], &t);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Null space basis as the columns of a `cols × nullity` matrix.
    pub fn kernel_matrix(&self) -> Mat {
        Mat::from_columns(self.field, self.cols, &self.kernel_basis())
    }

    /// Solves `self · x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Solution> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let f = self.field;
        let rhs = Mat::column_vector(f, b);
        let aug = Mat::hstack(f, self.rows, &[self, &rhs]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(Solution { particular: x, kernel: self.kernel_basis() })
    }

    /// Solves `self · X = rhs` for a matrix `X`, returning one solution.
    pub fn solve_matrix(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(rhs.rows, self.rows, "right-hand side has wrong height");
        let f = self.field;
        let aug = Mat::hstack(f, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(f, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.data[p * rhs.cols + c] = r.get(i, self.cols + c).clone();
            }
        }
        Some(x)
    }

    /// Whether `v` lies in the column space.
    pub fn column_span_contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.rows, "vector has wrong length");
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let rhs = Mat::column_vector(self.field, v);
        let aug = Mat::hstack(self.field, self.rows, &[self, &rhs]);
        aug.rank() == self.rank()
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn column_span_contains_all(&self, other: &Mat) -> bool {
        assert_eq!(other.rows, self.rows, "height mismatch");
        let aug = Mat::hstack(self.field, self.rows, &[self, other]);
        aug.rank() == self.rank()
    }

    /// Indices of a maximal independent subset of columns (leftmost greedy).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A left inverse `L` with `L · self = I`, when the columns are independent.
    pub fn left_inverse(&self) -> Option<Mat> {
        if self.rank() != self.cols {
            return None;
        }
        // Solve selfᵀ · Lᵀ = I.
        self.transpose().solve_matrix(&Mat::identity(self.field, self.cols)).map(|x| x.transpose())
    }

    /// Column indices of the identity that extend the column space of `self`
    /// to the whole ambient space.
    pub fn complement_standard_columns(&self) -> Vec<usize> {
        let f = self.field;
        let aug = Mat::hstack(f, self.rows, &[self, &Mat::identity(f, self.rows)]);
        let (_, pivots) = aug.rref();
        pivots.into_iter().filter(|&p| p >= self.cols).map(|p| p - self.cols).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Shorthand for an integer scalar.
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// Shorthand for the rational `n/d`. Panics when `d = 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Reduces a vector of scalars into the field.
pub fn reduce_vec(field: Field, v: Vec<Scalar>) -> Result<Vec<Scalar>> {
    v.into_iter().map(|x| field.reduce(x)).collect()
}

/// Whether a scalar is a nonnegative integer representable as `i64` (for display helpers).
pub fn as_small_int(x: &Scalar) -> Option<i64> {
    use num_traits::ToPrimitive;
    if x.is_integer() && x.numer().abs() < BigInt::from(i64::MAX) {
        x.numer().to_i64()
    } else {
        None
    }
}
