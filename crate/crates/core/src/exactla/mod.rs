//! Dense exact linear algebra over the rationals.

mod pencil;
mod upoly;

pub use pencil::{
    pencil_at, pencil_min_rank, BinaryForm, DropPoint, PencilMode, PencilOptions,
    PencilRankCertificate,
};
pub use upoly::UniPoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::LinalgError;
use crate::polyalg::{format_rational, Rational};

/// Integral domain with exact division, as needed by fraction-free elimination.
pub(crate) trait BareissRing: Clone {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    /// `self / other`, where the division is known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn zero_elem() -> Self {
        BigInt::zero()
    }
    fn one_elem() -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero());
        self / other
    }
}

pub(crate) struct Elimination<T> {
    pub rank: usize,
    /// Last pivot: up to sign, the determinant of the minor on the pivot rows and columns.
    pub last_pivot: T,
}

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting and column skipping.
pub(crate) fn bareiss<T: BareissRing>(mut a: Vec<Vec<T>>) -> Elimination<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = T::one_elem();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero_elem()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = row[j].mul(pivot).sub(&lead.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = T::zero_elem();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    Elimination {
        rank: r,
        last_pivot: prev,
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
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
        RationalMatrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// [self | other]
    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// self stacked above other.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> Self {
        Self::from_fn(end - start, self.cols, |i, j| {
            self.get(start + i, j).clone()
        })
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// Each row multiplied by the lcm of its denominators.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_basis(self)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss(m.integer_rows()).rank
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut RationalMatrix) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).recip();
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..cols {
                let v = m.get(i, j) - &f * m.get(r, j);
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let mut e = m.clone();
    let pivots = rref(&mut e);
    let cols = m.cols;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -e.get(r, free).clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn rank_basics() {
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RationalMatrix::identity(5).rank(), 5);
        let m = RationalMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
        assert_eq!(RationalMatrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![
                Rational::new(1.into(), 2.into()),
                Rational::new(1.into(), 3.into()),
            ],
            vec![rat(3), rat(2)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_and_projection() {
        assert!(RationalMatrix::identity(4).kernel_basis().is_empty());
        let m = RationalMatrix::from_i64(&[vec![1, 1, 0], vec![0, 0, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn bareiss_last_pivot_is_minor() {
        // det = -2 for [[1,2],[3,4]]
        let e = bareiss(vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(4)],
        ]);
        assert_eq!(e.rank, 2);
        assert_eq!(e.last_pivot, BigInt::from(-2));
        // skipped zero column
        let e = bareiss(vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(4), BigInt::from(5)],
        ]);
        assert_eq!(e.rank, 2);
        assert_eq!(e.last_pivot, BigInt::from(6));
    }

    #[test]
    fn stacking_and_shapes() {
        let a = RationalMatrix::identity(2);
        let b = RationalMatrix::zeros(2, 3);
        assert_eq!(a.hstack(&b).unwrap().shape(), (2, 5));
        assert!(a.vstack(&b).is_err());
        assert!(a.mul(&RationalMatrix::zeros(3, 3)).is_err());
        assert_eq!(a.vstack(&a).unwrap().row_block(2, 4), a);
    }
}
